// placeholder main; full CLI lands after the core modules build
int main() { return 0; }
