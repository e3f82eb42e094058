void sprintf_flawed(char *record)
{
    char cell[64];
    sprintf(cell, "%s", record);
    use(cell);
}

void sprintf_patched(char *payload)
{
    char scratch[64];
    snprintf(scratch, 64, "%s", payload);
    use(scratch);
}
