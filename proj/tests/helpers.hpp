#pragma once

#include "sdgjel/matcher.hpp"
#include "sdgjel/taxonomy.hpp"
#include "sdgjel/text.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>
#include <string>
#include <vector>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data(const char* file) { return std::string(SDGJEL_TEST_DATA_DIR) + "/" + file; }

struct bundle {
    sdgjel::jel_taxonomy tax;
    std::vector<sdgjel::sdg_goal> goals;
    sdgjel::stoplist stop;
    sdgjel::code_index idx;

    bundle()
        : tax(sdgjel::parse_jel_snapshot(read_file(data("jel_snapshot.json")))),
          goals(sdgjel::parse_sdg_catalog(read_file(data("sdg_catalog.json")))),
          stop(sdgjel::parse_stoplist(read_file(data("stoplist.txt")))),
          idx(tax, stop.function_words) {}
};

inline const bundle& bundled() {
    static const bundle b;
    return b;
}

struct run_result {
    int status = -1;
    std::string out;
};

// Runs a shell command line and captures stdout.
inline run_result run(const std::string& cmd) {
    run_result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = ::pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

inline std::string cli() { return SDGJEL_CLI_PATH; }

}  // namespace testutil
