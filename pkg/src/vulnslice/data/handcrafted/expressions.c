/* Assignment-shape edge cases for the arithmetic-expression rule. */

void assignment_rhs_identifier(int v)
{
    int out;
    out = v;
}

void assignment_rhs_call_argument(char *name)
{
    int written;
    written = snprintf(0, 0, "%s", name);
}

void compound_assignment_excluded(int v)
{
    int acc;
    acc = 0;
    acc += v;
    acc *= 2;
}

void one_line_three_candidates(char *a, char *b, int n)
{
    int r;
    r = strcmp(a, b) + strncmp(a, b, n);
}

void chained_assignment(int v)
{
    int x, y;
    x = y = v;
}

void comparison_is_not_assignment(int v)
{
    if (v == 41)
        v;
}
