void format_flawed(char *record)
{
    char *cell = record;
    printf(cell);
}

void format_patched(char *payload)
{
    char *scratch = payload;
    printf("%s", scratch);
}
