#include "dyadconv/app/run.hpp"

int main(int argc, char** argv) { return dyadconv::app::run(argc, argv); }
