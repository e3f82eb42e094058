void allocarith_handler_0(int count)
{
    int total;
    total = count * 4;
    char *store = malloc(total);
    store[count] = 'a';
}
