void format_handler_0(char *input)
{
    char *store = input;
    printf(store);
}
