#include <cstdio>
int main() { std::puts("invextract: CLI under construction"); return 0; }
