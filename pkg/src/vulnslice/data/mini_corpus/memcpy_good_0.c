void memcpy_worker_0(char *message, int width)
{
    if (width <= 16)
    {
        char frame[16];
        memcpy(frame, message, width);
        frame[0] = 'k';
    }
}
