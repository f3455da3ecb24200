// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exit status 0 iff all criteria pass.

#include <cstdio>
#include <cstring>
#include <filesystem>

#include "fbmchaos/verify.hpp"

int main(int argc, char** argv) {
    fbmchaos::verify::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
        if (std::strncmp(argv[i], "--out=", 6) == 0) opt.scratch_dir = argv[i] + 6;
    }
    if (opt.scratch_dir.empty()) {
        opt.scratch_dir = (std::filesystem::temp_directory_path() / "fbmchaos_accept").string();
    }
    std::filesystem::create_directories(opt.scratch_dir);

    const auto results = fbmchaos::verify::run_all(opt);
    std::fputs(fbmchaos::verify::format_report(results).c_str(), stdout);
    const bool ok = fbmchaos::verify::all_pass(results);
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return ok ? 0 : 1;
}
