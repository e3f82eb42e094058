void strcpy_handler_0(char *input)
{
    char store[16];
    strcpy(store, input);
    printf("%s\n", store);
}
