void malloc_worker_0(int width)
{
    char *frame = malloc(width);
    if (frame != NULL)
    {
        frame[0] = 'm';
        use(frame);
    }
}
