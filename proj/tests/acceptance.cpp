#include <iostream>

#include "lcm/verify.hpp"

int main()
{
    int failed = 0, i = 0;
    for (const auto &check : lcm::verify::appendix_suite()) {
        auto r = check();
        ++i;
        std::cout << "criterion " << i << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.name << " - " << r.detail;
        if (r.counterexample)
            std::cout << " counterexample: " << *r.counterexample;
        std::cout << std::endl;
        failed += !r.pass;
    }
    return failed ? 1 : 0;
}
