/* Declaration statements with several declarators share one node, so
   the bracket/star rules see the whole statement text. */

void multiple_plain_declarators(void)
{
    int a, b;
    a = 1;
    b = a;
}

void star_taints_every_declarator(void)
{
    char *p, q;
    q = 'x';
    p = &q;
}

void brackets_taint_every_declarator(int n)
{
    int table[16], spare;
    spare = n;
    table[0] = spare;
}

void pointer_array_combo(void)
{
    char *argv_like[8];
    argv_like[0] = 0;
}

void initialized_declarations(int seed)
{
    int doubled = seed * 2;
    char letters[4] = "abc";
    letters[0] = 'z';
    doubled = doubled + 1;
}

void struct_member_declarations(struct holder *h)
{
    int field_count = h->count;
    h->count = field_count + 1;
}
