#include "doctest.h"

#include "ising/emit.hpp"

#include <cstdlib>
#include <sstream>

using namespace ising;

TEST_CASE("empty sweeps emit a header-only table") {
    std::ostringstream os;
    emit_csv(os, {"a", "b"}, {});
    CHECK(os.str() == "a,b\n");
}

TEST_CASE("cells print by type") {
    std::ostringstream os;
    emit_csv(os, {"n", "x", "tag"},
             {{Cell{42LL}, Cell{0.1}, Cell{std::string("Ferro")}}});
    CHECK(os.str() == "n,x,tag\n42,0.10000000000000001,Ferro\n");
}

TEST_CASE("doubles round-trip through the text format") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, 5e-324, -1.2345678901234567e-8,
                     3.141592653589793, -0.0, 48.75}) {
        std::string s = format_double(v);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
}
