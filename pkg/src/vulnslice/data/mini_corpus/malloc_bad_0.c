void malloc_handler_0(int count)
{
    char *store = malloc(count);
    store[0] = 'm';
    use(store);
}
