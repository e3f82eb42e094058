void allocarith_worker_0(int width)
{
    int room;
    if (width < 16)
    {
        room = width * 4;
        char *frame = malloc(room);
        frame[0] = 'a';
    }
}
