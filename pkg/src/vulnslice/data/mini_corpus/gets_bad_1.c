void gets_handler_1(void)
{
    char scratch[32];
    gets(scratch);
    puts(scratch);
}
