void memcpy_handler_0(char *input, int count)
{
    char store[16];
    memcpy(store, input, count);
    store[0] = 'k';
}
