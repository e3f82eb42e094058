void free_handler_1(char *scratch)
{
    free(scratch);
    scratch[0] = scratch[1];
}
