#include "plvkit/app/commands.hpp"

int main(int argc, char** argv) { return plvkit::app::run(argc, argv); }
