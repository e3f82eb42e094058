/* Candidates nested inside control structure. */

void loop_with_risky_call(char *dst, char *src, int n)
{
    int i;
    i = 0;
    while (i < n)
    {
        memcpy(dst, src, n);
        i = i + 1;
    }
}

void branch_with_array(int flag)
{
    if (flag)
    {
        char room[64];
        room[0] = 'r';
    }
    else
    {
        int empty;
        empty = flag;
    }
}

void for_loop_declares_pointer(int n)
{
    for (int i = 0; i < n; i++)
    {
        char *walker;
        walker = 0;
    }
}

void condition_contains_call(char *path)
{
    if (fopen(path, "r"))
        puts("found");
}

void early_return_after_alloc(int n)
{
    char *space = malloc(n);
    if (space == NULL)
        return;
    space[0] = 0;
}
