void strcpy_worker_1(char *request)
{
    if (strlen(request) < 32)
    {
        char slot[32];
        strncpy(slot, request, 32);
        printf("%s\n", slot);
    }
}
