#include <cstdio>

int main() {
    std::puts("orq: placeholder");
    return 0;
}
