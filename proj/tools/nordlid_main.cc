#include "nordlid/cli.h"

int main(int argc, char** argv) { return nordlid::RunCli(argc, argv); }
