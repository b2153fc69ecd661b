#include "qpt/exterior.hpp"
#include "qpt/scalar.hpp"

#include <doctest.h>

using qpt::BasisIndex;
using qpt::ComplexRational;
using Form = qpt::Multivector<ComplexRational>;

namespace {

Form one_form(int n, std::initializer_list<int> coeffs) {
    Form f(n, 1);
    int k = 0;
    for (int c : coeffs) {
        if (c != 0) f.add(BasisIndex{k}, ComplexRational(c));
        ++k;
    }
    return f;
}

}  // namespace

TEST_CASE("permutation and merge signs") {
    CHECK(qpt::perm_sign({0, 1, 2}) == 1);
    CHECK(qpt::perm_sign({1, 0, 2}) == -1);
    CHECK(qpt::perm_sign({2, 0, 1}) == 1);
    CHECK(qpt::perm_sign({3, 2, 1, 0}) == 1);
    CHECK(qpt::perm_sign({0, 0, 1}) == 0);
    CHECK(qpt::merge_sign(0b10, 0b01) == -1);
    CHECK(qpt::merge_sign(0b01, 0b10) == 1);
    CHECK(qpt::merge_sign(0b0101, 0b1010) == -1);
    CHECK(qpt::merge_sign(0b11, 0b10) == 0);
}

TEST_CASE("basis index requires strictly increasing indices") {
    const BasisIndex a{0, 1, 3};
    CHECK(a.degree() == 3);
    CHECK(a.indices() == std::vector<int>{0, 1, 3});
    CHECK(a.mask() == 0b1011u);
    CHECK_THROWS_AS(BasisIndex({3, 0, 1}), std::domain_error);
    CHECK_THROWS_AS(BasisIndex({1, 1}), std::domain_error);
}

TEST_CASE("wedge of one-forms is alternating") {
    const Form a = one_form(2, {1, 2, 0, -1});
    const Form b = one_form(2, {0, 3, 1, 1});
    CHECK(qpt::wedge(a, b) == -qpt::wedge(b, a));
    CHECK(qpt::wedge(a, a).is_zero());
    const Form e0 = one_form(1, {1, 0});
    const Form e1 = one_form(1, {0, 1});
    CHECK(qpt::top_coefficient(qpt::wedge(e0, e1)) == ComplexRational(1));
    CHECK(qpt::top_coefficient(qpt::wedge(e1, e0)) == ComplexRational(-1));
}

TEST_CASE("wedge is associative and graded commutative") {
    const Form a = one_form(2, {1, -2, 0, 5});
    const Form b = one_form(2, {2, 0, 1, 1});
    const Form c = one_form(2, {0, 1, -3, 2});
    const Form ab = qpt::wedge(a, b);
    CHECK(qpt::wedge(ab, c) == qpt::wedge(a, qpt::wedge(b, c)));
    // A 2-form commutes with a 1-form.
    CHECK(qpt::wedge(ab, c) == qpt::wedge(c, ab));
}

TEST_CASE("top coefficient of 2x2 determinant") {
    // (a e0 + b e1) ^ (c e0 + d e1) = (ad - bc) e0 ^ e1.
    const Form f = one_form(1, {3, 5});
    const Form g = one_form(1, {7, 11});
    CHECK(qpt::top_coefficient(qpt::wedge(f, g)) == ComplexRational(3 * 11 - 5 * 7));
}

TEST_CASE("degree overflow and dimension mismatch are errors") {
    const Form a = one_form(1, {1, 1});
    const Form top = qpt::wedge(a, one_form(1, {1, -1}));
    CHECK_THROWS_AS((void)qpt::wedge(top, a), std::domain_error);
    CHECK_THROWS_AS((void)qpt::wedge(a, one_form(2, {1, 0, 0, 0})), std::domain_error);
    CHECK_THROWS_AS((void)qpt::top_coefficient(a), std::domain_error);
}
