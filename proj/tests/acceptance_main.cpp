// Acceptance suite: one criterion per line, nonzero exit when any selected
// criterion fails. Criteria can be run individually via --criterion N.

#include "pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <vector>

int main(int argc, char** argv) {
    qcf::pipeline::PipelineOptions opts;
    std::vector<int> criteria;

    CLI::App app{"acceptance suite for the coin-flipping laboratory"};
    app.add_option("--criterion", criteria, "criterion number (1-8); repeatable; default all");
    app.add_option("--runs", opts.mc_runs, "Monte Carlo runs per validation point");
    app.add_option("--seed", opts.seed, "random seed for the Monte Carlo criteria");
    app.add_option("--threads", opts.threads, "worker threads for the Monte Carlo criteria");
    app.add_option("--k-max", opts.k_max, "largest pulse count the optimizer scans");
    CLI11_PARSE(app, argc, argv);

    if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8};

    const auto results = qcf::pipeline::run_acceptance(opts, criteria);
    bool all_pass = true;
    for (const auto& result : results) {
        std::puts(qcf::pipeline::format_result_line(result).c_str());
        all_pass = all_pass && result.pass;
    }
    std::printf("%zu/%zu criteria passed\n",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.pass; })),
                results.size());
    return all_pass ? 0 : 1;
}
