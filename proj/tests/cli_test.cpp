// End-to-end tests of the privwit binary: spawn it through /bin/sh, capture
// exit codes and output files, and compare runs for determinism. The binary
// path arrives via the PRIVWIT_CLI_PATH compile definition.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
int g_checks = 0;
fs::path g_dir;

void check(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::cerr << "FAILED: " << what << "\n";
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Run `cli args` with optional env prefix; capture stdout/stderr separately.
RunResult run(const std::string& env, const std::string& args) {
  static int counter = 0;
  fs::path out = g_dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = g_dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" + PRIVWIT_CLI_PATH + "\" " + args + " >" +
                    out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status == -1)
    r.exit_code = -1;
  else
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

int main() {
  g_dir = fs::temp_directory_path() / "privwit-cli-test";
  fs::remove_all(g_dir);
  fs::create_directories(g_dir);

  {  // --version and --help exit cleanly
    RunResult v = run("", "--version");
    check(v.exit_code == 0, "--version exits 0");
    check(contains(v.out, "privwit"), "--version names the tool");
    RunResult h = run("", "--help");
    check(h.exit_code == 0, "--help exits 0");
    check(contains(h.out, "attack"), "--help lists subcommands");
  }

  {  // unknown subcommand is a usage error
    RunResult r = run("", "transmogrify");
    check(r.exit_code == 1, "unknown subcommand exits 1");
    check(contains(r.err, "error"), "unknown subcommand prints an error");
  }

  {  // small attack sweep: csv shape and key columns
    fs::path csv = g_dir / "attack.csv";
    RunResult r = run("", "attack --channel bit-flip --sweep 0:1:5 --p-grid 51 --out " + csv.string());
    check(r.exit_code == 0, "attack sweep exits 0");
    std::string body = slurp(csv);
    check(contains(body, "# privwit "), "csv carries the metadata comment");
    check(contains(body, "alpha,trace_norm_witness,psq_key_witness,er_upper_bound"),
          "csv has the attack columns");
    check(count_lines(body) == 2 + 5, "csv has one line per sweep point plus meta+header");
  }

  {  // byte-identical output across thread counts (explicit flag and env)
    fs::path a = g_dir / "t1.csv";
    fs::path b = g_dir / "t4.csv";
    fs::path c = g_dir / "t3.csv";
    std::string args = "attack --channel depolarizing --sweep 0:1:7 --p-grid 41 --out ";
    RunResult r1 = run("PRIVWIT_THREADS=1", args + a.string());
    RunResult r2 = run("PRIVWIT_THREADS=4", args + b.string());
    RunResult r3 = run("", args + c.string() + " --threads 3");
    check(r1.exit_code == 0 && r2.exit_code == 0 && r3.exit_code == 0, "threaded sweeps exit 0");
    check(slurp(a) == slurp(b), "PRIVWIT_THREADS=1 and =4 give identical bytes");
    check(slurp(a) == slurp(c), "--threads 3 gives identical bytes");
  }

  {  // invalid thread configuration is a validation error
    RunResult r = run("PRIVWIT_THREADS=banana", "attack --sweep 0:1:3 --p-grid 21");
    check(r.exit_code == 1, "bad PRIVWIT_THREADS exits 1");
    check(contains(r.err, "PRIVWIT_THREADS"), "error names the variable");
  }

  {  // scenario file: validation failure names the field, exits 1
    fs::path bad = g_dir / "bad.ini";
    write_file(bad, "task = attack\n[channel]\nkind = bit-flip\nalpha = 1.5\n");
    RunResult r = run("", "run " + bad.string());
    check(r.exit_code == 1, "out-of-range alpha exits 1");
    check(contains(r.err, "channel.alpha"), "error names channel.alpha");
  }

  {  // scenario file: numeric failure (non-PSD mcs coefficients) exits 2
    fs::path bad = g_dir / "npsd.json";
    write_file(bad,
               R"({"task": "randomness", "setting": 1,
                   "state": {"family": "mcs", "c": [[1.2, 0.0], [0.0, -0.2]]}})");
    RunResult r = run("", "run " + bad.string());
    check(r.exit_code == 2, "non-PSD coefficient matrix exits 2");
    check(contains(r.err, "numerical failure"), "numeric failures are labeled");
  }

  {  // missing scenario file
    RunResult r = run("", "run /nonexistent/nowhere.ini");
    check(r.exit_code == 1, "missing scenario exits 1");
    check(contains(r.err, "cannot open"), "missing scenario names the problem");
  }

  {  // scenario and flag paths produce identical bytes for the same work
    fs::path ini = g_dir / "sweep.ini";
    fs::path from_ini = g_dir / "from_ini.csv";
    fs::path from_flags = g_dir / "from_flags.csv";
    write_file(ini,
               "task = attack\np_grid_points = 31\n[state]\nds = 2\n[channel]\nkind = dephasing\n"
               "[sweep]\nstart = 0\nstop = 1\ncount = 5\n"
               "[output]\npath = " + from_ini.string() + "\n");
    RunResult r1 = run("", "run " + ini.string());
    RunResult r2 = run("", "attack --channel dephasing --sweep 0:1:5 --p-grid 31 --out " + from_flags.string());
    check(r1.exit_code == 0, "scenario run exits 0");
    check(r2.exit_code == 0, "flag run exits 0");
    check(slurp(from_ini) == slurp(from_flags), "scenario and flag paths agree byte-for-byte");
  }

  {  // bounds subcommand emits the named bounds as json
    RunResult r = run("", "bounds --s-a 1 --cmi 1");
    check(r.exit_code == 0, "bounds exits 0");
    check(contains(r.out, "two_S_a"), "bounds json names two_S_a");
    check(contains(r.out, "delta_bound_cor_main"), "bounds json names delta_bound_cor_main");
    check(contains(r.out, "applies_to"), "bounds json carries applicability notes");
  }

  {  // randomness subcommand covers the four settings
    RunResult r = run("", "randomness --state bell --setting 1");
    check(r.exit_code == 0, "randomness exits 0");
    check(contains(r.out, "R_A_max"), "randomness json has R_A_max");
    RunResult bad = run("", "randomness --state bell --setting 9");
    check(bad.exit_code == 1, "setting 9 exits 1");
  }

  {  // demo superdense: the before/after rates and the matching bound
    RunResult r = run("", "demo superdense");
    check(r.exit_code == 0, "demo exits 0");
    check(contains(r.out, "rate_shield_kept"), "demo reports the held rate");
    check(contains(r.out, "rate_shield_leaked"), "demo reports the leaked rate");
    check(contains(r.out, "bound_two_S_a"), "demo reports the 2 S(a) bound");
  }

  {  // markov subcommand: verdict report and table
    fs::path rep = g_dir / "verdict.json";
    fs::path tab = g_dir / "traj.csv";
    RunResult r = run("", "markov --dynamics oscillating:gamma=0.5,omega=3 --grid 0:3:301 "
                          "--report " + rep.string() + " --out " + tab.string());
    check(r.exit_code == 0, "markov exits 0");
    std::string verdict = slurp(rep);
    check(contains(verdict, "\"nonmarkovian\""), "oscillating dynamics is flagged nonmarkovian");
    check(contains(verdict, "intervals"), "report lists backflow intervals");
    std::string table = slurp(tab);
    check(contains(table, "t,f,g,df_dt,dg_dt"), "trajectory csv has the expected columns");
    check(count_lines(table) == 2 + 301, "trajectory csv has one row per grid point");

    RunResult m = run("", "markov --dynamics semigroup:gamma=1 --grid 0:3:301 --report " + rep.string());
    check(m.exit_code == 0, "semigroup markov exits 0");
    check(contains(slurp(rep), "markovian_on_grid"), "semigroup dynamics is flagged markovian");
  }

  {  // regions subcommand
    fs::path csv = g_dir / "region.csv";
    RunResult r = run("", "regions --kind fig2 --x 0:3:7 --y 0:2:5 --out " + csv.string());
    check(r.exit_code == 0, "regions exits 0");
    std::string body = slurp(csv);
    check(count_lines(body) == 2 + 7 * 5, "region csv enumerates the full grid");
    check(contains(body, "inside"), "region csv has the inside column");
  }

  std::cout << g_checks << " checks, " << g_failures << " failures\n";
  return g_failures == 0 ? 0 : 1;
}
