void format_handler_1(char *payload)
{
    char *scratch = payload;
    printf(scratch);
}
