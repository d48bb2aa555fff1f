#include "hyscdg/cli.hpp"

#include <atomic>
#include <csignal>
#include <iostream>

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) {
    g_stop.store(true);
    std::signal(SIGINT, SIG_DFL);
}

} // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_sigint);
    return hyscdg::run_command({argv + 1, argv + argc}, std::cout, std::cerr, &g_stop);
}
