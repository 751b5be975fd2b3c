// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "polarpilot/construction.hpp"

using namespace polarpilot;

namespace {

ConstructionOptions bec_options(double eps) {
    ConstructionOptions opt;
    opt.method = ConstructionMethod::bhattacharyya_bec;
    opt.erasure_prob = eps;
    return opt;
}

ConstructionOptions ga_options(double ebno_db) {
    ConstructionOptions opt;
    opt.method = ConstructionMethod::gaussian_approximation;
    opt.design_ebno_db = ebno_db;
    return opt;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("./order_tmp_") + std::to_string(std::rand()) + ".txt";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("bec recursion hand example, n=1, K=1") {
    // z=0.5: worse child 2z-z^2 = 0.75, better child z^2 = 0.25
    CHECK(bec_worse(0.5) == doctest::Approx(0.75));
    CHECK(bec_better(0.5) == doctest::Approx(0.25));
    CodeSpec spec = construct_info_set(1, 1, bec_options(0.5));
    CHECK(spec.info_set.members() == std::vector<int>{2});
}

TEST_CASE("bec split brackets the parent erasure probability") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double z = unit(rng);
        CHECK(bec_better(z) <= z);
        CHECK(z <= bec_worse(z));
        CHECK(bec_better(z) >= 0.0);
        CHECK(bec_worse(z) <= 1.0);
    }
}

TEST_CASE("ga phi is decreasing and invertible") {
    double prev = ga_phi(1e-6);
    for (double x = 0.01; x < 60.0; x += 0.37) {
        const double p = ga_phi(x);
        CHECK(p < prev);
        prev = p;
        CHECK(ga_phi_inv(p) == doctest::Approx(x).epsilon(1e-6));
    }
}

TEST_CASE("ga split brackets the parent mean and stays monotone") {
    double prev_worse = 0.0;
    for (double m = 1e-4; m < 4000.0; m *= 1.17) {
        const double w = ga_worse(m);
        const double b = ga_better(m);
        CHECK(w <= m);
        CHECK(m <= b);
        CHECK(w >= 0.0);
        CHECK(w >= prev_worse);  // monotone in the parent mean
        prev_worse = w;
    }
}

TEST_CASE("ga construction at the paper operating point is structurally valid") {
    CodeSpec spec = construct_info_set(8, 128, ga_options(3.0));
    CHECK(spec.block_length == 256);
    CHECK(spec.info_set.size() == 128);
    CodeSpecReport report = validate_code_spec(spec);
    CHECK(report.frozen_info_block_zero);
    CHECK(report.info_set_contiguous);
    CHECK(report.info_block_involution);
}

TEST_CASE("reliability order is nested in the info length") {
    for (auto opt : {ga_options(2.0), bec_options(0.4)}) {
        CodeSpec prev = construct_info_set(6, 1, opt);
        for (int k = 2; k <= 64; ++k) {
            CodeSpec cur = construct_info_set(6, k, opt);
            CHECK(prev.info_set.is_subset_of(cur.info_set));
            CHECK(cur.info_set.size() == prev.info_set.size() + 1);
            prev = cur;
        }
    }
}

TEST_CASE("external order round trip") {
    TempFile file("4\n3\n2\n1\n");
    ConstructionOptions opt;
    opt.method = ConstructionMethod::external_order;
    opt.order_file = file.path;

    CodeSpec rate1 = construct_info_set(2, 4, opt);
    CHECK(rate1.info_set == IndexSet::full(4));

    CodeSpec spec = construct_info_set(2, 2, opt);
    CHECK(spec.info_set.members() == std::vector<int>{3, 4});
}

TEST_CASE("external order rejects bad files") {
    ConstructionOptions opt;
    opt.method = ConstructionMethod::external_order;

    opt.order_file = "./no_such_file_here.txt";
    CHECK_THROWS_AS(construct_info_set(2, 2, opt), std::invalid_argument);

    TempFile dup("4\n4\n2\n1\n");
    opt.order_file = dup.path;
    CHECK_THROWS_AS(construct_info_set(2, 2, opt), std::invalid_argument);

    TempFile range("5\n1\n");
    opt.order_file = range.path;
    CHECK_THROWS_AS(construct_info_set(2, 1, opt), std::invalid_argument);

    TempFile short_list("4\n3\n");
    opt.order_file = short_list.path;
    CHECK_THROWS_AS(construct_info_set(2, 3, opt), std::invalid_argument);

    // an order whose prefix is not a valid information set
    TempFile invalid("1\n2\n3\n4\n");
    opt.order_file = invalid.path;
    CHECK_THROWS_AS(construct_info_set(2, 1, opt), std::invalid_argument);
}

TEST_CASE("validate_code_spec on the worked examples") {
    {
        CodeSpec spec{4, 16, 8, IndexSet(16, {8, 10, 11, 12, 13, 14, 15, 16}),
                      std::vector<uint8_t>(8, 0)};
        CHECK(validate_code_spec(spec).all_passed());
    }
    {
        CodeSpec spec{3, 8, 4, IndexSet(8, {4, 6, 7, 8}), std::vector<uint8_t>(4, 0)};
        CHECK(validate_code_spec(spec).all_passed());
    }
    {
        CodeSpec spec{2, 4, 2, IndexSet(4, {1, 4}), std::vector<uint8_t>(2, 0)};
        CodeSpecReport report = validate_code_spec(spec);
        CHECK_FALSE(report.frozen_info_block_zero);
        CHECK_FALSE(report.info_set_contiguous);
    }
}

TEST_CASE("constructed specs validate across sizes and rates") {
    for (int order = 3; order <= 7; ++order) {
        const int block = 1 << order;
        for (double rate : {0.25, 0.5, 0.75}) {
            const int k = static_cast<int>(rate * block);
            CHECK(validate_code_spec(construct_info_set(order, k, ga_options(3.0))).all_passed());
            CHECK(validate_code_spec(construct_info_set(order, k, bec_options(0.5))).all_passed());
        }
    }
}

TEST_CASE("construct argument errors") {
    CHECK_THROWS_AS(construct_info_set(3, 9, ga_options(3.0)), std::invalid_argument);
    CHECK_THROWS_AS(construct_info_set(3, 0, ga_options(3.0)), std::invalid_argument);
    CHECK_THROWS_AS(construct_info_set(0, 1, ga_options(3.0)), std::invalid_argument);
    CHECK_THROWS_AS(construct_info_set(3, 4, bec_options(1.5)), std::invalid_argument);
}
