void sprintf_worker_0(char *message)
{
    char frame[16];
    snprintf(frame, 16, "%s", message);
    use(frame);
}
