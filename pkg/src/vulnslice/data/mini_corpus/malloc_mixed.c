void malloc_flawed(int span)
{
    char *cell = malloc(span);
    cell[0] = 'm';
    use(cell);
}

void malloc_patched(int span)
{
    char *cell = malloc(span);
    if (cell != NULL)
    {
        cell[0] = 'm';
        use(cell);
    }
}
