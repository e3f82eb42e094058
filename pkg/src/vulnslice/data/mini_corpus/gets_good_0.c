void gets_worker_0(void)
{
    char frame[16];
    fgets(frame, 16, stdin);
    puts(frame);
}
