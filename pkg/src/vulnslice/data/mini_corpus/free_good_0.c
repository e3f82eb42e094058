void free_worker_0(char *frame)
{
    free(frame);
    frame = NULL;
}
