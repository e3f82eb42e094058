void strcpy_handler_1(char *payload)
{
    char scratch[32];
    strcpy(scratch, payload);
    printf("%s\n", scratch);
}
