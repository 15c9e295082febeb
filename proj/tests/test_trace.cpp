#include <doctest.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmlab/errors.hpp"
#include "swarmlab/trace.hpp"

using namespace swarmlab;

namespace {

Timestamp ts(const char* text) {
    const auto t = parse_timestamp(text);
    REQUIRE(t.has_value());
    return *t;
}

std::vector<TraceRecord> load(const std::string& name) {
    std::ifstream in(std::string(SWARMLAB_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return parse_trace(in);
}

struct Row {
    const char* time;
    std::int64_t seeders;
    std::int64_t leechers;
};

// Published torrent activity, one week after broadcast.
const Row kTable2[] = {
    {"2010-04-27T15:32:30", 10113, 3863}, {"2010-04-27T19:15:01", 11187, 5132},
    {"2010-04-27T21:19:10", 11000, 4872}, {"2010-04-27T22:31:42", 9664, 4468},
    {"2010-04-28T22:16:10", 7701, 2445},  {"2010-04-29T05:20:27", 4640, 1078},
    {"2010-04-29T21:32:32", 6825, 1887},  {"2010-04-30T07:35:36", 4416, 840},
};

}  // namespace

TEST_SUITE("trace") {
    TEST_CASE("table fixtures match the published numbers") {
        const auto t2 = load("table2.csv");
        REQUIRE(t2.size() == 8);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(format_timestamp(t2[i].timestamp) == kTable2[i].time);
            CHECK(t2[i].seeders == kTable2[i].seeders);
            CHECK(t2[i].leechers == kTable2[i].leechers);
        }

        const auto t1 = load("table1.csv");
        REQUIRE(t1.size() == 2);
        CHECK(t1[0].seeders == 334);
        CHECK(t1[0].leechers == 48);
        CHECK(t1[1].seeders == 10113);
        CHECK(t1[1].leechers == 3863);
    }

    TEST_CASE("header-only input is an empty trace") {
        CHECK(parse_trace("timestamp,seeders,leechers\n").empty());
        CHECK(parse_trace("timestamp,seeders,leechers\r\n\r\n").empty());
    }

    TEST_CASE("ordering errors") {
        const std::string dup =
            "timestamp,seeders,leechers\n2010-04-27T15:32:30,1,2\n2010-04-27T15:32:30,3,4\n";
        CHECK_THROWS_AS(parse_trace(dup), TraceOrderError);
        try {
            parse_trace(dup);
        } catch (const TraceOrderError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("2010-04-27T15:32:30") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_trace("timestamp,seeders,leechers\n2010-04-28T00:00:00,1,2\n2010-04-27T00:00:00,1,2\n"),
                        TraceOrderError);
    }

    TEST_CASE("parse errors carry line numbers") {
        auto line_of = [](const std::string& text) -> std::size_t {
            try {
                parse_trace(text);
            } catch (const TraceParseError& e) {
                return e.line();
            }
            return 0;
        };
        const std::string h = "timestamp,seeders,leechers\n";
        CHECK(line_of("time,seeders,leechers\n") == 1);
        CHECK(line_of("") == 0);
        CHECK(line_of(h + "2010-04-27T15:32:30,1,2\n2010-04-27 16:00:00,1,2\n") == 3);
        CHECK(line_of(h + "2010-04-27T15:32:30,1\n") == 2);
        CHECK(line_of(h + "2010-04-27T15:32:30,1,2,3\n") == 2);
        CHECK(line_of(h + "2010-04-27T15:32:30,x,2\n") == 2);
        CHECK(line_of(h + "2010-02-30T15:32:30,1,2\n") == 2);
        CHECK_THROWS_WITH_AS(parse_trace(h + "2010-04-27T15:32:30,-4,2\n"), doctest::Contains("negative"),
                             TraceParseError);
    }

    TEST_CASE("timestamp parsing is strict") {
        CHECK(parse_timestamp("2010-04-27T15:32:30").has_value());
        CHECK_FALSE(parse_timestamp("2010-04-27T24:00:00").has_value());
        CHECK_FALSE(parse_timestamp("2010-13-01T00:00:00").has_value());
        CHECK_FALSE(parse_timestamp("2010-4-27T15:32:30").has_value());
        CHECK_FALSE(parse_timestamp("2010-04-27T15:32:30Z").has_value());
        CHECK(format_timestamp(ts("2012-02-29T23:59:59")) == "2012-02-29T23:59:59");
        CHECK((ts("2010-04-27T00:00:00") - ts("2010-04-26T00:00:00")).count() == 86400);
    }

    TEST_CASE("summary of the week after broadcast") {
        const auto t2 = load("table2.csv");
        const auto s = summarize(t2, ts("2010-04-26T00:00:00"));
        CHECK(format_timestamp(s.peak_seeders.timestamp) == "2010-04-27T19:15:01");
        CHECK(s.peak_seeders.count == 11187);
        CHECK(s.peak_leechers.count == 5132);
        CHECK(format_timestamp(s.peak_leechers.timestamp) == "2010-04-27T19:15:01");
        REQUIRE(s.hours_to_peak.has_value());
        CHECK(*s.hours_to_peak == doctest::Approx(43.25).epsilon(1e-4));
        CHECK(std::abs(s.seeder_decay_ratio - 0.3948) < 1e-4);
        CHECK(s.leecher_decay_ratio == doctest::Approx(840.0 / 5132.0));
        CHECK(s.first == t2.front());
        CHECK(s.last == t2.back());

        CHECK_FALSE(summarize(t2).hours_to_peak.has_value());
    }

    TEST_CASE("summary edge cases") {
        const std::vector<TraceRecord> one{{ts("2010-04-27T15:32:30"), 7, 3}};
        const auto s = summarize(one);
        CHECK(s.peak_seeders.count == 7);
        CHECK(s.last == one[0]);
        CHECK(s.seeder_decay_ratio == 1.0);
        CHECK(s.leecher_decay_ratio == 1.0);

        const std::vector<TraceRecord> tie{{ts("2010-01-01T00:00:00"), 5, 1},
                                           {ts("2010-01-01T01:00:00"), 5, 1},
                                           {ts("2010-01-01T02:00:00"), 0, 0}};
        const auto t = summarize(tie, ts("2010-01-01T00:00:00"));
        CHECK(t.peak_seeders.timestamp == tie[0].timestamp);
        CHECK(*t.hours_to_peak == 0.0);
        CHECK(t.seeder_decay_ratio == 0.0);

        CHECK_THROWS_AS(summarize({}), DomainError);
        CHECK_THROWS_AS(summarize(one, ts("2010-04-28T00:00:00")), InvalidParameter);
    }

    TEST_CASE("swarm comparison") {
        const auto t1 = load("table1.csv");
        const auto c = compare_swarms(t1[0], t1[1]);
        CHECK(std::abs(c.leecher_ratio - 0.01243) < 1e-5);
        CHECK(std::abs(c.seeder_ratio - 0.03303) < 1e-5);
        CHECK(c.leecher_ratio > 0.01);

        const auto same = compare_swarms(t1[1], t1[1]);
        CHECK(same.leecher_ratio == 1.0);
        CHECK(same.seeder_ratio == 1.0);

        CHECK_THROWS_AS(compare_swarms(t1[0], {t1[1].timestamp, 5, 0}), DomainError);
        CHECK_THROWS_AS(compare_swarms(t1[0], {t1[1].timestamp, 0, 5}), DomainError);
    }

    TEST_CASE("summary JSON is a flat object") {
        const auto doc = nlohmann::json::parse(summary_to_json(summarize(load("table2.csv"), ts("2010-04-26T00:00:00"))));
        CHECK(doc.is_object());
        for (const auto& [key, value] : doc.items()) CHECK_FALSE(value.is_structured());
        CHECK(doc["peak_seeders"] == 11187);
        CHECK(doc["peak_seeders_time"] == "2010-04-27T19:15:01");
    }

    TEST_CASE("property: render then parse round-trips") {
        std::mt19937_64 gen(19);
        std::uniform_int_distribution<int> step(1, 200000), count(0, 50000), len(0, 30);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<TraceRecord> recs;
            Timestamp t = ts("2009-12-31T22:00:00");
            for (int i = len(gen); i > 0; --i) {
                t += std::chrono::seconds(step(gen));
                recs.push_back({t, count(gen), count(gen)});
            }
            CHECK(parse_trace(render_trace(recs)) == recs);
        }
    }

    TEST_CASE("property: peaks ignore appended smaller records") {
        std::mt19937_64 gen(23);
        auto base = load("table2.csv");
        const auto before = summarize(base);
        std::uniform_int_distribution<int> below(0, 839);
        Timestamp t = base.back().timestamp;
        for (int i = 0; i < 50; ++i) {
            t += std::chrono::minutes(17);
            base.push_back({t, below(gen), below(gen)});
            const auto after = summarize(base);
            CHECK(after.peak_seeders == before.peak_seeders);
            CHECK(after.peak_leechers == before.peak_leechers);
        }
    }
}
