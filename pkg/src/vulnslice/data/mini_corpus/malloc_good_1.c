void malloc_worker_1(int extent)
{
    char *slot = malloc(extent);
    if (slot != NULL)
    {
        slot[0] = 'm';
        use(slot);
    }
}
