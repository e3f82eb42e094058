void memcpy_worker_1(char *request, int extent)
{
    if (extent <= 32)
    {
        char slot[32];
        memcpy(slot, request, extent);
        slot[0] = 'k';
    }
}
