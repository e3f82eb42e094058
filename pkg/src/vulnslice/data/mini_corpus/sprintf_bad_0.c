void sprintf_handler_0(char *input)
{
    char store[16];
    sprintf(store, "%s", input);
    use(store);
}
