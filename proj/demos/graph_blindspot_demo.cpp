// Where rational invariants go blind: K_3,3 and the triangular prism are
// both 3-regular on 6 vertices. On their 0/1 edge points every W1 generator
// takes the same value, yet the graphs are not isomorphic.

#include <iostream>

#include "orthoinv/orthoinv.hpp"

using namespace orthoinv;

int main() {
    GraphDemoReport report = graph_demo();
    std::cout << "p_1 on both graphs: " << report.p_values_k33[0] << " (edge count)\n";
    std::cout << "q_2: " << report.q_values_k33[0] << " = 6 * 3^2\n";
    std::cout << "z: " << report.z_k33 << " (all u_i equal)\n";
    std::cout << "all W1 generator values equal: " << (report.w1_values_equal ? "yes" : "no") << "\n";
    std::cout << "isomorphic (brute force over " << report.permutations_checked
              << " relabelings): " << (report.isomorphic ? "yes" : "no") << "\n";
    return (report.w1_values_equal && !report.isomorphic) ? 0 : 1;
}
