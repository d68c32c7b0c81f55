#include "opal/opal.hpp"
int main(){ return 0; }
