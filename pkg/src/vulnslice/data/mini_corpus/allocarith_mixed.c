void allocarith_flawed(int span)
{
    int quota;
    quota = span * 4;
    char *cell = malloc(quota);
    cell[span] = 'a';
}

void allocarith_patched(int count)
{
    int total;
    if (count < 64)
    {
        total = count * 4;
        char *store = malloc(total);
        store[0] = 'a';
    }
}
