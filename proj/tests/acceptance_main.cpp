#include <fraclab/acceptance.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

int main(int argc, char** argv) {
    std::set<std::string> only;
    for (int i = 1; i < argc; ++i) only.insert(argv[i]);
    const auto suite = fraclab::acceptance::run_suite(std::cout, only);
    const char* path = std::getenv("FRACLAB_ACCEPTANCE_REPORT");
    std::ofstream(path ? path : "acceptance_report.json") << suite.report.dump(2) << '\n';
    std::cout << suite.report["passed"].get<int>() << "/" << suite.report["checks"].get<int>()
              << " criteria passed" << std::endl;
    return suite.gate_passed ? 0 : 1;
}
