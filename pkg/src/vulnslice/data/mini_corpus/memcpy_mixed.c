void memcpy_flawed(char *record, int span)
{
    char cell[64];
    memcpy(cell, record, span);
    cell[0] = 'k';
}

void memcpy_patched(char *input, int count)
{
    if (count <= 64)
    {
        char store[64];
        memcpy(store, input, count);
        store[0] = 'k';
    }
}
