void gets_worker_1(void)
{
    char slot[32];
    fgets(slot, 32, stdin);
    puts(slot);
}
