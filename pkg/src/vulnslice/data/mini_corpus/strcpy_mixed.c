void strcpy_flawed(char *record)
{
    char cell[64];
    strcpy(cell, record);
    printf("%s\n", cell);
}

void strcpy_patched(char *message)
{
    if (strlen(message) < 64)
    {
        char frame[64];
        strncpy(frame, message, 64);
        printf("%s\n", frame);
    }
}
