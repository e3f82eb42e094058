void allocarith_handler_1(int amount)
{
    int bytes;
    bytes = amount * 4;
    char *scratch = malloc(bytes);
    scratch[amount] = 'a';
}
