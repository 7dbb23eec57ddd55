#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcf::cli {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

json channel_to_json(const ChannelParams& ch) {
    return json{{"k_loss", ch.k_loss},         {"beta", ch.beta},
                {"length_km", ch.length_km},   {"eta", ch.eta},
                {"dark_count", ch.dark_count}, {"noise", ch.noise}};
}

json fair_point_to_json(const FairPoint& fp) {
    return json{{"k", fp.params.k},
                {"mu", fp.params.source.mu},
                {"a", fp.params.a.value()},
                {"p_cheat", fp.p_cheat},
                {"honest_abort", fp.h},
                {"classical", fp.classical},
                {"advantage", fp.advantage}};
}

json report_to_json(const SimulationReport& report) {
    return json{{"runs", report.runs},
                {"seed", report.seed},
                {"completed", report.completed},
                {"abort_no_detection", report.no_detection},
                {"abort_dark_count_check", report.dark_count_check},
                {"abort_noise_check", report.noise_check},
                {"coin_zero", report.coin_zero},
                {"coin_one", report.coin_one},
                {"abort_rate", report.abort_rate()},
                {"std_error", report.std_error()}};
}

json sweep_rows_to_json(const SweepDataset& dataset) {
    json rows = json::array();
    for (const SweepRow& row : dataset.rows) {
        json r{{"length_km", row.length_km}, {"h_target", row.h_target}, {"solved", row.solved}};
        if (row.solved) {
            r["k"] = row.k;
            r["mu"] = row.mu;
            r["a"] = row.a;
            r["p_cheat"] = row.p_cheat;
            r["classical"] = row.classical;
            r["advantage"] = row.advantage;
        } else {
            r["error"] = row.error;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string sweep_to_csv(const SweepDataset& dataset) {
    std::ostringstream out;
    out << "length_km,H_target,K,mu,a,p_cheat,classical,advantage\n";
    for (const SweepRow& row : dataset.rows) {
        if (!row.solved) continue;
        out << format_number(row.length_km) << ',' << format_number(row.h_target) << ','
            << row.k << ',' << format_number(row.mu) << ',' << format_number(row.a) << ','
            << format_number(row.p_cheat) << ',' << format_number(row.classical) << ','
            << (row.advantage ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string analyze_to_csv(const json& results) {
    std::ostringstream out;
    out << "honest_abort,alice_cheat,bob_cheat_bound,classical_bound,"
           "event_a1,event_a2,event_a3,event_a4,event_rest\n";
    const json& ev = results.at("event_probs");
    out << format_number(results.at("honest_abort").get<double>()) << ','
        << format_number(results.at("alice_cheat").get<double>()) << ','
        << format_number(results.at("bob_cheat_bound").get<double>()) << ','
        << format_number(results.at("classical_bound").get<double>()) << ','
        << format_number(ev.at("a1").get<double>()) << ','
        << format_number(ev.at("a2").get<double>()) << ','
        << format_number(ev.at("a3").get<double>()) << ','
        << format_number(ev.at("a4").get<double>()) << ','
        << format_number(ev.at("rest").get<double>()) << '\n';
    return out.str();
}

std::string simulate_to_csv(const SimulationReport& report, double analytic_h) {
    std::ostringstream out;
    out << "runs,seed,completed,abort_no_detection,abort_dark_count_check,abort_noise_check,"
           "coin_zero,coin_one,abort_rate,std_error,analytic_honest_abort\n";
    out << report.runs << ',' << report.seed << ',' << report.completed << ','
        << report.no_detection << ',' << report.dark_count_check << ',' << report.noise_check
        << ',' << report.coin_zero << ',' << report.coin_one << ','
        << format_number(report.abort_rate()) << ',' << format_number(report.std_error()) << ','
        << format_number(analytic_h) << '\n';
    return out.str();
}

std::string fair_point_to_csv(double length_km, double h_target, const FairPoint& fp) {
    std::ostringstream out;
    out << "length_km,H_target,K,mu,a,p_cheat,classical,advantage\n";
    out << format_number(length_km) << ',' << format_number(h_target) << ',' << fp.params.k << ','
        << format_number(fp.params.source.mu) << ',' << format_number(fp.params.a.value()) << ','
        << format_number(fp.p_cheat) << ',' << format_number(fp.classical) << ','
        << (fp.advantage ? "true" : "false") << '\n';
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

void write_json_file(const std::string& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace qcf::cli
