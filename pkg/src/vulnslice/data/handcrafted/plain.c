/* Functions that should produce no candidates at all. */

void completely_empty(void)
{
}

void declaration_without_markers(void)
{
    int lonely;
    lonely;
}

int passthrough(int v)
{
    return v;
}

void safe_calls_only(int v)
{
    record(v);
    notify(v, v);
}

int branch_no_assign(int v)
{
    if (v)
        return 1;
    return 0;
}
