void format_worker_1(char *request)
{
    char *slot = request;
    printf("%s", slot);
}
