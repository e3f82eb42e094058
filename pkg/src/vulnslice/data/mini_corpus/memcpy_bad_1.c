void memcpy_handler_1(char *payload, int amount)
{
    char scratch[32];
    memcpy(scratch, payload, amount);
    scratch[0] = 'k';
}
