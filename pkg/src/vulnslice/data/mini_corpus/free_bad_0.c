void free_handler_0(char *store)
{
    free(store);
    store[0] = store[1];
}
