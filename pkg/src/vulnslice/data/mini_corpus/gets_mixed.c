void gets_flawed(void)
{
    char cell[64];
    gets(cell);
    puts(cell);
}

void gets_patched(void)
{
    char slot[64];
    fgets(slot, 64, stdin);
    puts(slot);
}
