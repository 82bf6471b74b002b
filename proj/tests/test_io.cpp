#include <doctest.h>

#include <filesystem>

#include "mnl/errors.hpp"
#include "mnl/io.hpp"
#include "mnl/trigsum.hpp"
#include "support.hpp"

using namespace mnl;
using mnl::io::json;
using mnl::testing::Gen;

TEST_CASE("matrix document layout is row-major with n fastest") {
    CoefficientMatrix A(2, 3);
    A(0, 1) = cdouble(1.5, -2.0);
    A(1, 0) = cdouble(0.0, 7.0);
    const auto doc = io::to_json(A);
    CHECK(doc.at("M") == 2);
    CHECK(doc.at("N") == 3);
    CHECK(doc.at("entries").size() == 6);
    CHECK(doc.at("entries")[1] == json::array({1.5, -2.0}));
    CHECK(doc.at("entries")[3] == json::array({0.0, 7.0}));
    CHECK(doc.dump() ==
          R"({"M":2,"N":3,"entries":[[0.0,0.0],[1.5,-2.0],[0.0,0.0],[0.0,7.0],[0.0,0.0],[0.0,0.0]]})");
}

TEST_CASE("documents survive a text round trip bit-exactly") {
    Gen g(1);
    for (int i = 0; i < 20; ++i) {
        const auto A = g.matrix(g.integer(1, 6), g.integer(1, 6));
        const auto back = io::matrix_from_json(json::parse(io::to_json(A).dump()));
        REQUIRE(back.rows() == A.rows());
        for (std::size_t t = 0; t < A.entries().size(); ++t) CHECK(back.entries()[t] == A.entries()[t]);

        const auto S = eval_sum(A, {3 * A.rows(), 2 * A.cols(), EvalPath::Direct, FrequencyScale::TwoPi});
        const auto gb = io::grid_from_json(json::parse(io::to_json(S).dump()));
        REQUIRE(gb.kx() == S.kx());
        for (std::size_t t = 0; t < S.samples().size(); ++t) CHECK(gb.samples()[t] == S.samples()[t]);
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"M":1,"N":1})")), ValidationError);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"M":1,"N":2,"entries":[[1,0]]})")), ValidationError);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"M":1,"N":1,"entries":[[1]]})")), ValidationError);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"M":0,"N":1,"entries":[]})")), ValidationError);
    CHECK_THROWS_AS(io::grid_from_json(json::parse(R"({"Kx":2,"Ky":1,"samples":[[1,0],["a",0]]})")), ValidationError);
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), ValidationError);
}

TEST_CASE("CSV schema") {
    CHECK(io::csv_header() ==
          "M,N,alpha,beta,gamma,delta,theta,phi_or_blank,upper,lower,searched,ratio_lower,ratio_searched");
    BoundReport r;
    r.M = 2;
    r.N = 3;
    r.exponents = MixedExponents::from_reciprocals(0.7, 0.3, 0.4, 0.9);
    r.theta = 0.7;
    r.upper = 2.0;
    r.lower_extremizer = 1.0;
    r.searched = 1.5;
    r.ratio_lower = 0.5;
    r.ratio_searched = 0.75;
    CHECK(io::csv_row(r) == "2,3,0.69999999999999996,0.29999999999999999,0.40000000000000002,"
                            "0.90000000000000002,0.69999999999999996,,2,1,1.5,0.5,0.75");
    const auto j = io::to_json(r);
    CHECK(j.at("phi").is_null());
    CHECK(j.at("exponents").at("gamma") == 0.4);
}

TEST_CASE("files") {
    const auto path = std::filesystem::temp_directory_path() / "mnl_io_test.json";
    Gen g(2);
    const auto A = g.matrix(3, 2);
    io::write_json_file(path, io::to_json(A));
    const auto back = io::matrix_from_json(io::read_json_file(path));
    for (std::size_t t = 0; t < A.entries().size(); ++t) CHECK(back.entries()[t] == A.entries()[t]);
    std::filesystem::remove(path);
}
