void malloc_handler_1(int amount)
{
    char *scratch = malloc(amount);
    scratch[0] = 'm';
    use(scratch);
}
