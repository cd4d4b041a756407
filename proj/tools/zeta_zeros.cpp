// Writes a table of the first N positive ordinates of zeta zeros in the plain-text format read by
// load_zeros.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "fgap/report.hpp"
#include "fgap/zeta.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Compute zeta zero ordinates"};
    std::size_t count = 100000;
    std::string out;
    app.add_option("-n,--count", count, "number of ordinates")->check(CLI::Range(std::size_t{1}, std::size_t{2000000}));
    app.add_option("-o,--out", out, "output path")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = fgap::compute_zeta_zeros(count);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string comment = "first " + std::to_string(count) +
                                    " zeta zero ordinates; Riemann-Siegel/Euler-Maclaurin with Gram-block search";
        fgap::atomic_write(out, fgap::format_zero_table(rep.zeros, comment));
        std::cerr << "wrote " << rep.zeros.size() << " ordinates to " << out << " (" << rep.gram_blocks
                  << " Gram blocks, " << rep.refined_blocks << " refined, " << secs << " s)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
