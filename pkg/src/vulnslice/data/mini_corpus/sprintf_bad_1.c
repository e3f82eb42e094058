void sprintf_handler_1(char *payload)
{
    char scratch[32];
    sprintf(scratch, "%s", payload);
    use(scratch);
}
