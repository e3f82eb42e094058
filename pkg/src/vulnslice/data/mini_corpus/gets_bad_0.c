void gets_handler_0(void)
{
    char store[16];
    gets(store);
    puts(store);
}
