// Small tour of the library: a dimension table, a stability verdict with
// its witness chain, and a loop class.

#include <iostream>

#include "confstab/confstab.hpp"

using namespace confstab;

int main() {
    std::cout << "H_*(C_6(R^2); F_3), degrees 0..4:";
    for (auto d : algebra::dims(2, 3, 6, 4)) std::cout << " " << d;
    std::cout << "\n";

    const auto first = algebra::first_inceptive(3, 3, 3);
    std::cout << "first 3-inceptive class of C_3(R^3): degree " << first->degree << ", "
              << first->witnesses.front().name() << "\n";

    const auto s2 = ManifoldDescriptor::sphere(2);
    const auto v = oracle::oracle(s2, CoefficientSpec::prime_field(3), 4, 13);
    std::cout << "S^2, F_3, k=4 vs j=13: " << (v.iso_guaranteed ? "guaranteed" : "not guaranteed") << " ("
              << v.basis << ")\n";
    if (auto chain = oracle::witness_chain(s2, 3, 4, 13)) {
        for (const auto& m : *chain) {
            std::cout << "  " << (m.kind == oracle::MoveKind::EMove ? "replicate " : "zigzag ") << m.from << " -> "
                      << m.to << "\n";
        }
    }

    const auto c = loops::evaluate(loops::build_sigma(3, 2));
    std::cout << "sigma_f for k=3, deg f=2: a=" << *c.a << " b=" << c.b << "\n";
    std::cout << "H_1(C_5(S^2); F_2) has dimension " << sphere::h1_s2_dim_mod_p(5, 2) << "\n";
}
