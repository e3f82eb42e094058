void free_worker_1(char *slot)
{
    free(slot);
    slot = NULL;
}
