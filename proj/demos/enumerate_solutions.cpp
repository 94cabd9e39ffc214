// Minimal tour of the library: fix parameters, build the three solution
// families, enumerate the full solution space, and confirm the families
// span it.

#include <stargraph/solutions.hpp>

#include <iostream>

int main() {
    using namespace stargraph;

    const Params params(3, parse_rational("3/2"), parse_rational("5/7"), parse_rational("2"));

    for (const Family& family : all_families(params)) {
        std::cout << family.label << " (" << family.list.size() << " members)\n";
        for (const std::string& name : family.list.names) std::cout << "  " << name << "\n";
    }

    const EnumerationResult enumeration = enumerate_solutions(params);
    std::cout << "\nexhaustive enumeration: nullity " << enumeration.nullity << "\n";

    const CompletenessReport report = certify_completeness(params);
    std::cout << "families span the full solution space: " << (report.span_equal ? "yes" : "no") << "\n";
    return report.span_equal ? 0 : 1;
}
