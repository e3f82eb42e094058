void printLine(char *line)
{
    if (line != NULL)
        printf("%s\n", line);
}

void func()
{
    char dataBuffer[100];
    char *data = dataBuffer;
    memset(data, 'A', 100 - 1);
    data[100 - 1] = '\0';
    printLine(data);
}
