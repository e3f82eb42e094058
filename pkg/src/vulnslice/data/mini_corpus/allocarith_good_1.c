void allocarith_worker_1(int extent)
{
    int needed;
    if (extent < 32)
    {
        needed = extent * 4;
        char *slot = malloc(needed);
        slot[0] = 'a';
    }
}
