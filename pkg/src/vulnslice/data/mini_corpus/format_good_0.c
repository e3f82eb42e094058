void format_worker_0(char *message)
{
    char *frame = message;
    printf("%s", frame);
}
