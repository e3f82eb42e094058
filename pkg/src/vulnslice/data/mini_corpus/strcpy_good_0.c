void strcpy_worker_0(char *message)
{
    if (strlen(message) < 16)
    {
        char frame[16];
        strncpy(frame, message, 16);
        printf("%s\n", frame);
    }
}
