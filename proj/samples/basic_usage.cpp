#include "kprime/kprime.hpp"

#include <iostream>

int main()
{
    using namespace kprime;

    const Rational v(3, 2);
    std::cout << "R_{3/2}(1..8):";
    for (auto x : sequence(RamanujanKind::Ramanujan, v, 8))
        std::cout << ' ' << x;
    std::cout << "\nC_{3/2}(1..8):";
    for (auto x : sequence(RamanujanKind::Chebyshev, v, 8))
        std::cout << ' ' << x;

    std::cout << "\nN_3(1..12):";
    for (const auto& r : nk_sequence(3, 12))
        std::cout << ' ' << r.value;

    std::cout << "\na(1..20):";
    for (const auto& r : theorem1_scan(1, 20))
        std::cout << ' ' << *r.a_value();

    const auto ch = SmallIntervalTheorem::cullinan_hajir();
    std::cout << "\n(2, 1 mod 3)-Ramanujan numbers:";
    for (auto x : residue_sequence(ResidueClass(3, 1), Rational(2, 1), capacity(Rational(2, 1), ch), ch))
        std::cout << ' ' << x;

    const auto table = build_table(1000);
    std::cout << "\npi(1000) = " << table.pi(1000)
              << ", primorial of (10, 30] = " << primorial_segment(table, 10, 30).get_str() << '\n';

    std::cout << json(SequenceReport{"ramanujan", "2", sequence(RamanujanKind::Ramanujan, Rational(2, 1), 5)})
                     .dump()
              << '\n';
}
