void sprintf_worker_1(char *request)
{
    char slot[32];
    snprintf(slot, 32, "%s", request);
    use(slot);
}
