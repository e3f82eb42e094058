/* Basic candidate shapes: risky calls, arrays, pointers, assignments. */

void copy_with_library_call(char *src)
{
    char buf[32];
    strcpy(buf, src);
    printf("%s\n", buf);
}

void call_not_on_list(char *src)
{
    sanitize(src);
    validate(src, 32);
}

void array_declaration_only(void)
{
    char source[100];
    int counts[8];
    source[0] = 'a';
    counts[0] = 1;
}

void pointer_declaration_only(void)
{
    char *data;
    int *cursor;
    data = 0;
    cursor = 0;
}

void arithmetic_from_identifiers(int base)
{
    int offset;
    offset = base - 8;
    offset = offset * 2;
}

void arithmetic_constants_only(void)
{
    int fixed;
    fixed = 42;
    fixed = 13;
}

void mixed_array_and_pointer(char *tail)
{
    char *names[4];
    names[0] = tail;
}

void nested_call_inside_assignment(char *a, char *b)
{
    int same;
    same = strcmp(a, b);
}
