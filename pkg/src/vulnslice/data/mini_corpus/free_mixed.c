void free_flawed(char *cell)
{
    free(cell);
    cell[0] = cell[1];
}

void free_patched(char *frame)
{
    free(frame);
    frame = NULL;
}
