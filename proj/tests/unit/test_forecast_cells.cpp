#include <catch_amalgamated.hpp>

#include <cmath>

#include "pm25/forecast/bptt.hpp"
#include "pm25/forecast/cells.hpp"
#include "pm25/random.hpp"

using namespace pm25;
using namespace pm25::forecast;
using Catch::Matchers::WithinAbs;

TEST_CASE("rnn cell examples", "[forecast][cells]") {
    RnnParams zero(3);
    const std::vector<double> h0{0.1, -0.2, 0.3};
    const auto z = rnn_cell(0.7, h0, zero);
    for (double h : z.h) CHECK(h == 0.0);
    CHECK(z.y == 0.0);

    RnnParams p(1);
    p.w_x()[0] = 1.0;
    p.w_y()[0] = 1.0;
    const std::vector<double> none{0.0};
    const auto s = rnn_cell(0.5, none, p);
    CHECK_THAT(s.h[0], WithinAbs(0.46212, 1e-5));
    CHECK_THAT(s.y, WithinAbs(0.46212, 1e-5));

    RnnParams q(1);
    q.w_h()[0] = 1.0;
    const std::vector<double> prev{0.3};
    CHECK_THAT(rnn_cell(0.9, prev, q).h[0], WithinAbs(0.29131, 1e-5));
}

TEST_CASE("rnn recurrent rows feed their own unit", "[forecast][cells]") {
    RnnParams p(2);
    // Unit 0 receives 1.0 * h_prev[1]; unit 1 receives nothing.
    p.w_h()[0 * 2 + 1] = 1.0;
    const std::vector<double> prev{0.0, 0.4};
    const auto s = rnn_cell(0.0, prev, p);
    CHECK_THAT(s.h[0], WithinAbs(std::tanh(0.4), 1e-15));
    CHECK(s.h[1] == 0.0);
}

TEST_CASE("lstm cell examples", "[forecast][cells]") {
    LstmParams zero(1);
    const std::vector<double> h0{0.0}, c0{0.8};
    const auto s = lstm_cell(1.3, h0, c0, zero);
    CHECK(s.gates[LstmParams::Input][0] == 0.5);
    CHECK(s.gates[LstmParams::Forget][0] == 0.5);
    CHECK(s.gates[LstmParams::Output][0] == 0.5);
    CHECK(s.gates[LstmParams::Candidate][0] == 0.0);
    CHECK(s.c[0] == 0.4);
    CHECK_THAT(s.h[0], WithinAbs(0.1899745, 1e-7));
    CHECK_THAT(s.h[0], WithinAbs(0.5 * std::tanh(0.4), 1e-15));

    const std::vector<double> czero{0.0};
    const auto e = lstm_cell(2.0, h0, czero, zero);
    CHECK(e.c[0] == 0.0);
    CHECK(e.h[0] == 0.0);

    LstmParams keep(2);
    for (auto& b : keep.bias(LstmParams::Forget)) b = 20.0;
    for (auto& b : keep.bias(LstmParams::Input)) b = -20.0;
    const std::vector<double> hp{0.1, -0.3}, cp{0.7, -1.4};
    const auto k = lstm_cell(5.0, hp, cp, keep);
    CHECK_THAT(k.c[0], WithinAbs(0.7, 1e-6));
    CHECK_THAT(k.c[1], WithinAbs(-1.4, 1e-6));
}

TEST_CASE("cell outputs are bounded", "[forecast][cells][property]") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng.below(6);
        RnnParams r(m);
        LstmParams l(m);
        // Kept small enough that tanh and the logistic do not round to +-1.
        for (auto& v : r.flat()) v = rng.uniform(-1, 1);
        for (auto& v : l.flat()) v = rng.uniform(-1, 1);
        std::vector<double> h(m), c(m);
        for (auto& v : h) v = rng.uniform(-1, 1);
        for (auto& v : c) v = rng.uniform(-3, 3);
        const double x = rng.uniform(-2, 2);
        for (double v : rnn_cell(x, h, r).h) REQUIRE(std::abs(v) < 1.0);
        const auto s = lstm_cell(x, h, c, l);
        for (double v : s.h) REQUIRE(std::abs(v) < 1.0);
        for (auto g : {LstmParams::Input, LstmParams::Forget, LstmParams::Output}) {
            for (double v : s.gates[g]) {
                REQUIRE(v > 0.0);
                REQUIRE(v < 1.0);
            }
        }
        for (double v : s.gates[LstmParams::Candidate]) REQUIRE(std::abs(v) <= 1.0);
    }
}

TEST_CASE("parameter counts", "[forecast][cells]") {
    CHECK(RnnParams(4).size() == 16 + 12 + 1);
    CHECK(LstmParams(4).size() == 4 * (16 + 8) + 4 + 1);
    CHECK(RnnParams::count_for(32) == RnnParams(32).size());
}

TEST_CASE("predict matches a manual unroll", "[forecast][cells]") {
    Rng rng(21);
    LstmParams p(3);
    for (auto& v : p.flat()) v = rng.uniform(-1, 1);
    const std::vector<double> window{0.2, 0.5, 0.1, 0.9};
    std::vector<double> h(3, 0.0), c(3, 0.0);
    for (double x : window) {
        const auto s = lstm_cell(x, h, c, p);
        h = s.h;
        c = s.c;
    }
    CHECK_THAT(lstm_predict(p, window), WithinAbs(readout(p.w_y(), p.b_y(), h), 1e-15));

    RnnParams r(3);
    for (auto& v : r.flat()) v = rng.uniform(-1, 1);
    std::vector<double> hr(3, 0.0);
    double y = 0.0;
    for (double x : window) {
        const auto s = rnn_cell(x, hr, r);
        hr = s.h;
        y = s.y;
    }
    CHECK_THAT(rnn_predict(r, window), WithinAbs(y, 1e-15));
}
