#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "swarmlab/analytic.hpp"
#include "swarmlab/errors.hpp"
#include "swarmlab/schedule.hpp"
#include "swarmlab/simulator.hpp"
#include "swarmlab/trace.hpp"

namespace swarmlab::cli {

namespace {

using nlohmann::json;

class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every float leaves the tool with 9 significant digits.
double round9(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

void round_numbers(json& j) {
    if (j.is_number_float()) {
        j = round9(j.get<double>());
    } else if (j.is_structured()) {
        for (auto& child : j) round_numbers(child);
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FileError("cannot open '" + path + "' for writing");
    return f;
}

void finish_output(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw FileError("failed writing '" + path + "'");
}

json stats_json(const BusyPeriodStats& s) {
    return {
        {"n", s.n},
        {"mean", s.mean},
        {"variance", s.variance},
        {"ci_half_width_95", s.ci_half_width_95},
        {"ci_lower", s.ci95().lower},
        {"ci_upper", s.ci95().upper},
        {"truncated_count", s.truncated_count},
    };
}

struct ModelFlags {
    double s = 0.0;
    double mu = 0.0;
    double r = 0.0;
    double lambda = 0.0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--s", s, "File size in data units")->required();
        cmd.add_option("--mu", mu, "Mean per-peer download rate")->required();
        cmd.add_option("--r", r, "Publisher arrival rate")->required();
        cmd.add_option("--lambda", lambda, "Peer arrival rate")->capture_default_str();
    }

    SwarmParams params() const { return {s, mu, r, lambda}; }

    json echo() const { return {{"s", s}, {"mu", mu}, {"r", r}, {"lambda", lambda}}; }
};

struct SimFlags {
    std::uint64_t seed = 0;
    std::size_t replications = 10000;
    std::string service = "exponential";
    std::size_t max_events = 10'000'000;
    unsigned threads = 1;

    void attach(CLI::App& cmd) {
        cmd.add_option("--seed", seed, "RNG seed")->required();
        cmd.add_option("--replications", replications, "Busy periods to simulate")->capture_default_str();
        cmd.add_option("--service", service, "Residence-time distribution")
            ->check(CLI::IsMember({"exponential", "deterministic"}))
            ->capture_default_str();
        cmd.add_option("--max-events", max_events, "Per-period event cap")->capture_default_str();
        cmd.add_option("--threads", threads, "Worker threads")->capture_default_str();
    }

    SimConfig config() const {
        SimConfig c;
        c.seed = seed;
        c.replications = replications;
        c.service = service == "deterministic" ? ServiceDistribution::deterministic : ServiceDistribution::exponential;
        c.max_events_per_period = max_events;
        c.threads = threads;
        return c;
    }

    json echo() const {
        return {{"seed", seed},
                {"replications", replications},
                {"service", service},
                {"max_events", max_events},
                {"threads", threads}};
    }
};

struct Envelope {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    json warnings = json::array();

    std::string dump() {
        json doc = {{"command", command}, {"parameters", parameters}, {"results", results}, {"warnings", warnings}};
        round_numbers(doc);
        return doc.dump(2);
    }
};

Envelope cmd_analytic(const ModelFlags& model) {
    const auto params = model.params();
    const auto report = analyze(params);
    Envelope env{"analytic", model.echo()};
    env.results = {
        {"load", params.load()},
        {"busy_period", report.busy_period},
        {"bundling_factor", report.bundling_factor},
        {"availability_fraction", report.availability_fraction},
    };
    return env;
}

Envelope cmd_simulate(const ModelFlags& model, const SimFlags& sim, const std::string& trace_out) {
    const auto params = model.params();
    auto config = sim.config();
    config.record_events = !trace_out.empty();
    const double analytic = expected_busy_period(params);

    std::optional<std::ofstream> trace_file;
    if (!trace_out.empty()) trace_file = open_output(trace_out);

    const auto run = run_busy_periods(params, config);
    if (trace_file) {
        write_event_csv(*trace_file, run.traces);
        finish_output(*trace_file, trace_out);
    }

    Envelope env{"simulate", model.echo()};
    env.parameters.update(sim.echo());
    if (!trace_out.empty()) env.parameters["trace_out"] = trace_out;
    env.results = stats_json(run.stats);
    env.results["analytic_busy_period"] = analytic;
    const double se = run.stats.standard_error();
    env.results["z_score"] = se > 0.0 ? (run.stats.mean - analytic) / se : 0.0;
    env.results["analytic_in_ci"] = run.stats.ci95().contains(analytic);
    if (run.stats.truncated_count > 0) {
        env.warnings.push_back(std::to_string(run.stats.truncated_count) +
                               " busy periods hit the event cap and were excluded from the moments");
    }
    return env;
}

Envelope cmd_bundle(const ModelFlags& model, const SimFlags& sim) {
    const auto params = model.params();
    const double analytic_ratio = bundling_factor(params) / 2.0;
    // The doubled swarm must stay in range too.
    expected_busy_period(params.with_file_size(2.0 * params.file_size));
    const auto cmp = compare_bundle(params, sim.config());

    Envelope env{"bundle", model.echo()};
    env.parameters.update(sim.echo());
    env.results = {
        {"b_single_2s", cmp.b_single_2s},
        {"b_two_of_s_sum", cmp.b_two_of_s_sum},
        {"ratio", cmp.ratio},
        {"ratio_ci_half_width_95", cmp.ratio_ci_half_width_95},
        {"analytic_ratio", analytic_ratio},
        {"double_size", stats_json(cmp.double_size)},
        {"first_single", stats_json(cmp.first_single)},
        {"second_single", stats_json(cmp.second_single)},
    };
    const std::size_t truncated =
        cmp.double_size.truncated_count + cmp.first_single.truncated_count + cmp.second_single.truncated_count;
    if (truncated > 0) env.warnings.push_back(std::to_string(truncated) + " busy periods hit the event cap");
    return env;
}

Envelope cmd_schedule(int n, int free_riders, const std::string& csv_out) {
    const auto schedule = build_schedule(n, free_riders);
    const auto report = verify_schedule(schedule);
    if (!csv_out.empty()) {
        auto f = open_output(csv_out);
        write_schedule_csv(f, schedule);
        finish_output(f, csv_out);
    }
    Envelope env{"schedule", {{"n", n}, {"free_riders", free_riders}}};
    if (!csv_out.empty()) env.parameters["csv_out"] = csv_out;
    env.results = json::parse(report_to_json(schedule, report));
    if (!report.all_complete()) env.warnings.push_back("some nodes did not receive every chunk");
    return env;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, std::size_t size) {
    const auto colon = text.find(':');
    std::size_t a = 0, b = 0;
    try {
        if (colon == std::string::npos) throw std::invalid_argument("no colon");
        std::size_t used = 0;
        a = std::stoul(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
        b = std::stoul(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw InvalidParameter("--compare expects two row indices as A:B, got '" + text + "'");
    }
    if (a >= size || b >= size) {
        throw InvalidParameter("--compare index out of range for a trace with " + std::to_string(size) + " records");
    }
    return {a, b};
}

Envelope cmd_trace(const std::string& in_path, const std::string& formation, const std::string& compare,
                   const std::string& plot_out) {
    std::optional<Timestamp> formed;
    if (!formation.empty()) {
        formed = parse_timestamp(formation);
        if (!formed) throw InvalidParameter("--formation must be YYYY-MM-DDTHH:MM:SS, got '" + formation + "'");
    }

    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + in_path + "'");
    const auto records = parse_trace(in);
    if (in.bad()) throw FileError("failed reading '" + in_path + "'");

    Envelope env{"trace", {{"in", in_path}}};
    if (formed) env.parameters["formation"] = formation;
    if (!compare.empty()) env.parameters["compare"] = compare;
    if (!plot_out.empty()) env.parameters["plot_out"] = plot_out;

    env.results["records"] = records.size();
    if (records.empty()) {
        env.warnings.push_back("trace has no records");
    } else {
        env.results["summary"] = json::parse(summary_to_json(summarize(records, formed)));
    }

    if (!compare.empty()) {
        const auto [a, b] = parse_pair(compare, records.size());
        const auto cmp = compare_swarms(records[a], records[b]);
        env.results["comparison"] = {
            {"a", a}, {"b", b}, {"leecher_ratio", cmp.leecher_ratio}, {"seeder_ratio", cmp.seeder_ratio}};
    }

    if (!plot_out.empty()) {
        Timestamp origin{};
        if (formed) {
            origin = *formed;
        } else if (!records.empty()) {
            origin = records.front().timestamp;
            env.warnings.push_back("no --formation given; plot hours are measured from the first record");
        }
        auto f = open_output(plot_out);
        f << "hours,seeders,leechers\n";
        for (const auto& r : records) {
            char hours[40];
            std::snprintf(hours, sizeof hours, "%.9g",
                          static_cast<double>((r.timestamp - origin).count()) / 3600.0);
            f << hours << ',' << r.seeders << ',' << r.leechers << '\n';
        }
        finish_output(f, plot_out);
    }
    return env;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Content-availability laboratory for peer-to-peer swarms", "swarmlab"};
    app.require_subcommand(1);

    ModelFlags model;
    SimFlags sim;

    auto* analytic = app.add_subcommand("analytic", "Closed-form busy period, bundling factor and availability");
    model.attach(*analytic);

    auto* simulate = app.add_subcommand("simulate", "Simulate busy periods and compare with the closed form");
    model.attach(*simulate);
    sim.attach(*simulate);
    std::string trace_out;
    simulate->add_option("--trace-out", trace_out, "Write per-period event CSV here");

    auto* bundle = app.add_subcommand("bundle", "Simulated busy period of a 2s swarm vs two s swarms");
    model.attach(*bundle);
    sim.attach(*bundle);

    auto* schedule = app.add_subcommand("schedule", "Build and verify the chunk-exchange schedule");
    int n = 0;
    int free_riders = 0;
    std::string csv_out;
    schedule->add_option("--n", n, "Cooperating leechers")->required();
    schedule->add_option("--free-riders", free_riders, "Leechers that upload nothing")->capture_default_str();
    schedule->add_option("--csv-out", csv_out, "Write the transfer list as CSV");

    auto* trace = app.add_subcommand("trace", "Summarize a tracker seeder/leecher trace");
    std::string in_path, formation, compare, plot_out;
    trace->add_option("--in", in_path, "Trace CSV (timestamp,seeders,leechers)")->required();
    trace->add_option("--formation", formation, "Swarm formation time, YYYY-MM-DDTHH:MM:SS");
    trace->add_option("--compare", compare, "Compare record A against record B, as A:B");
    trace->add_option("--plot-out", plot_out, "Write hours,seeders,leechers CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "swarmlab: " << e.what() << '\n';
        return kUsage;
    }

    try {
        Envelope env;
        if (analytic->parsed()) {
            env = cmd_analytic(model);
        } else if (simulate->parsed()) {
            env = cmd_simulate(model, sim, trace_out);
        } else if (bundle->parsed()) {
            env = cmd_bundle(model, sim);
        } else if (schedule->parsed()) {
            env = cmd_schedule(n, free_riders, csv_out);
        } else {
            env = cmd_trace(in_path, formation, compare, plot_out);
        }
        out << env.dump() << '\n';
        return kOk;
    } catch (const OverflowError& e) {
        err << "swarmlab: overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const InvalidParameter& e) {
        err << "swarmlab: invalid parameter: " << e.what() << '\n';
        return kUsage;
    } catch (const FileError& e) {
        err << "swarmlab: " << e.what() << '\n';
        return kFileError;
    } catch (const Error& e) {
        err << "swarmlab: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace swarmlab::cli
