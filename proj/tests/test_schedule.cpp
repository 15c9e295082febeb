#include <doctest.h>

#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "swarmlab/errors.hpp"
#include "swarmlab/schedule.hpp"

using namespace swarmlab;

namespace {

// Independent of verify_schedule: count sends straight off the transfer list.
std::map<int, int> sends_by_node(const ExchangeSchedule& s) {
    std::map<int, int> out;
    for (const auto& t : s.transfers) ++out[t.sender];
    return out;
}

}  // namespace

TEST_SUITE("schedule") {
    TEST_CASE("three leechers: one seeder copy, two thirds each") {
        const auto s = build_schedule(3, 0);
        CHECK(s.transfers.size() == 9);
        const auto r = verify_schedule(s);
        CHECK(r.seeder_upload == Rational(1));
        for (int v = 1; v <= 3; ++v) CHECK(r.uploads[v] == Rational(2, 3));
        CHECK(r.max_leecher_upload == Rational(2, 3));
        CHECK(r.max_leecher_upload < Rational(1));
        CHECK(r.all_complete());
        CHECK(r.meets_toy_budget);
    }

    TEST_CASE("single leecher") {
        const auto s = build_schedule(1, 0);
        REQUIRE(s.transfers.size() == 1);
        CHECK(s.transfers[0] == Transfer{1, 0, 1, 1});
        const auto r = verify_schedule(s);
        CHECK(r.uploads[1] == Rational(0));
        CHECK(r.seeder_upload == Rational(1));
        CHECK(r.all_complete());
        CHECK(r.meets_toy_budget);
    }

    TEST_CASE("four leechers carry one free-rider at exactly one copy each") {
        const auto s = build_schedule(4, 1);
        const auto r = verify_schedule(s);
        CHECK(r.all_complete());
        CHECK(r.uploads[5] == Rational(0));
        CHECK(r.max_free_rider_upload == Rational(0));
        for (int v = 1; v <= 4; ++v) CHECK(r.uploads[v] == Rational(1));
        CHECK(r.seeder_upload == Rational(1));
        CHECK_FALSE(r.meets_toy_budget);
    }

    TEST_CASE("sending before holding is a causality violation") {
        ExchangeSchedule bad{3, 0, {{1, 0, 1, 1}, {1, 2, 3, 1}}};
        CHECK_THROWS_AS(verify_schedule(bad), CausalityViolation);
        try {
            verify_schedule(bad);
        } catch (const CausalityViolation& e) {
            CHECK(e.transfer_index() == 1);
            CHECK(std::string(e.what()).find("transfer #1") != std::string::npos);
        }

        // A chunk received in round 1 cannot be relayed in round 1.
        ExchangeSchedule same_round{2, 0, {{1, 0, 1, 1}, {1, 1, 2, 1}}};
        CHECK_THROWS_AS(verify_schedule(same_round), CausalityViolation);
        ExchangeSchedule next_round{2, 0, {{1, 0, 1, 1}, {2, 1, 2, 1}}};
        CHECK_NOTHROW(verify_schedule(next_round));
    }

    TEST_CASE("malformed transfers are rejected") {
        CHECK_THROWS_AS(verify_schedule({2, 0, {{1, 1, 1, 1}}}), InvalidParameter);
        CHECK_THROWS_AS(verify_schedule({2, 0, {{1, 0, 1, 3}}}), InvalidParameter);
        CHECK_THROWS_AS(verify_schedule({2, 0, {{1, 0, 9, 1}}}), InvalidParameter);
        CHECK_THROWS_AS(verify_schedule({2, 0, {{0, 0, 1, 1}}}), InvalidParameter);
        CHECK_THROWS_AS(verify_schedule({2, 0, {{2, 0, 1, 1}, {1, 0, 2, 2}}}), InvalidParameter);
        CHECK_THROWS_AS(verify_schedule({0, 0, {}}), InvalidParameter);
    }

    TEST_CASE("incomplete nodes are reported, not thrown") {
        ExchangeSchedule partial{3, 0, {{1, 0, 1, 1}, {1, 0, 2, 2}, {1, 0, 3, 3}}};
        const auto r = verify_schedule(partial);
        CHECK(r.complete[0]);
        CHECK_FALSE(r.complete[1]);
        CHECK_FALSE(r.all_complete());
        CHECK_FALSE(r.meets_toy_budget);
    }

    TEST_CASE("build_schedule argument checks") {
        CHECK_THROWS_AS(build_schedule(0, 0), InvalidParameter);
        CHECK_THROWS_AS(build_schedule(3, -1), InvalidParameter);
        CHECK_THROWS_AS(build_schedule(3, 4), InvalidParameter);
        CHECK_NOTHROW(build_schedule(3, 3));
    }

    TEST_CASE("brute force over n = 2..10 without free-riders") {
        for (int n = 2; n <= 10; ++n) {
            const auto s = build_schedule(n, 0);
            const auto sends = sends_by_node(s);
            CHECK(sends.at(0) == n);
            for (int v = 1; v <= n; ++v) CHECK(sends.at(v) == n - 1);

            const auto r = verify_schedule(s);
            CHECK(r.seeder_upload == Rational(1));
            for (int v = 1; v <= n; ++v) {
                CHECK(r.uploads[v] == Rational(n - 1, n));
                CHECK(r.complete[v]);
            }
            CHECK(r.meets_toy_budget);
        }
    }

    TEST_CASE("property: conservation, balance and free-rider completeness") {
        for (int n = 1; n <= 12; ++n) {
            for (int f = 0; f <= n; ++f) {
                const auto s = build_schedule(n, f);
                ScheduleReport r;
                REQUIRE_NOTHROW(r = verify_schedule(s));
                Rational up, down;
                for (int v = 0; v < s.node_count(); ++v) {
                    up += r.uploads[v];
                    down += r.downloads[v];
                }
                const Rational moved(static_cast<std::int64_t>(s.transfers.size()), n);
                CHECK(up == moved);
                CHECK(down == moved);
                CHECK(r.all_complete());
                CHECK(r.max_free_rider_upload == Rational(0));
                for (int v = 1; v <= n; ++v) CHECK(r.uploads[v] == Rational(n - 1 + f, n));
                for (const auto& t : s.transfers) {
                    CHECK(t.sender != t.receiver);
                    CHECK(t.chunk >= 1);
                    CHECK(t.chunk <= n);
                }
                if (f <= 1) CHECK(r.max_leecher_upload <= Rational(1));
            }
        }
    }

    TEST_CASE("exports") {
        const auto s = build_schedule(2, 1);
        std::ostringstream csv;
        write_schedule_csv(csv, s);
        CHECK(csv.str() ==
              "round,sender,receiver,chunk\n"
              "1,0,1,1\n1,0,2,2\n"
              "2,1,2,1\n2,2,1,2\n"
              "3,1,3,1\n3,2,3,2\n");

        const auto doc = nlohmann::json::parse(report_to_json(s, verify_schedule(s)));
        CHECK(doc["upload"].size() == 4);
        CHECK(doc["upload_exact"][1] == "1");
        CHECK(doc["role"][3] == "free_rider");
        CHECK(doc["complete"][3] == true);
        CHECK(doc["seeder_upload"] == 1.0);
    }

    TEST_CASE("rational arithmetic") {
        CHECK(Rational(2, 4) == Rational(1, 2));
        CHECK(Rational(1, -2) == Rational(-1, 2));
        CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
        CHECK(Rational(2, 3) < Rational(3, 4));
        CHECK(Rational(3, 9).to_string() == "1/3");
        CHECK_THROWS(Rational(1, 0));
    }
}
