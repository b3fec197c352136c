// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Also reachable as `congame repro`.

#include <congame/acceptance.hpp>

#include <iostream>

int main()
{
    return congame::acceptance::report(std::cout);
}
