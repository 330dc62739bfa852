// End-to-end checks of the beurling-lab binary: exit codes, emitted files,
// determinism of outputs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "ok   " << what << "\n";
  } else {
    std::cout << "FAIL " << what << "\n";
    ++failures;
  }
}

int run(const std::string& args) {
  std::string cmd = std::string(BEURLING_LAB_BIN) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const fs::path& p, const std::string& needle) {
  return slurp(p).find(needle) != std::string::npos;
}

}  // namespace

int main() {
  fs::path work = fs::temp_directory_path() / "beurling-lab-cli-tests";
  fs::remove_all(work);
  fs::create_directories(work);

  // --- build contract ---
  fs::path b1 = work / "ordinary";
  expect(run("build --system ordinary --xmax 1e4 --out " + b1.string()) == 0,
         "build ordinary exits 0");
  expect(fs::exists(b1 / "dN.csv") && fs::exists(b1 / "dPi.csv") &&
             fs::exists(b1 / "meta.json") && fs::exists(b1 / "primes.csv"),
         "build emits dN.csv dPi.csv primes.csv meta.json");
  expect(contains(b1 / "meta.json", "\"density_a\": 1"), "meta carries the density");

  fs::path b2 = work / "alpha";
  expect(run("build --system continuous-alpha:2 --xmax 1e4 --bins 4096 --out " +
             b2.string()) == 0,
         "build continuous-alpha exits 0");
  expect(contains(b2 / "dPi.csv", "# bins"), "density system dumps binned parts");

  expect(run("build --system powers2 --xmax 1e40 --out " + (work / "p2").string()) == 3,
         "powers2 atom guard exits 3");
  expect(run("build --system nonesuch --out " + (work / "x").string()) == 2,
         "unknown system exits 2");
  expect(run("frobnicate") == 2, "unknown subcommand exits 2");

  // --- verify ---
  expect(run("verify --suite core --system ordinary --xmax 1e4 --out " +
             (work / "v1").string()) == 0,
         "verify core on ordinary exits 0");
  expect(run("verify --suite gallery --system sparse2k --xmax 1e3 --out " +
             (work / "v2").string()) == 0,
         "verify gallery on sparse2k exits 0");
  expect(run("verify --suite core --in " + (work / "missing").string()) == 2,
         "verify with a missing system directory exits 2");

  // tampering with a dumped mass must be caught and named
  fs::path tampered = work / "tampered";
  fs::create_directories(tampered);
  for (const char* f : {"dN.csv", "dPi.csv", "meta.json", "primes.csv"})
    fs::copy_file(b1 / f, tampered / f);
  {
    std::string dn = slurp(tampered / "dN.csv");
    auto pos = dn.find("7,1\n");
    expect(pos != std::string::npos, "tamper target row found");
    dn.replace(pos, 4, "7,3\n");
    std::ofstream out(tampered / "dN.csv", std::ios::binary);
    out << dn;
  }
  expect(run("verify --suite core --in " + tampered.string() + " --out " +
             (work / "v3").string()) == 1,
         "verify on tampered dN exits 1");
  expect(contains(work / "v3" / "verify_core.json", "exp_star-rebuilds-N"),
         "failing invariant is named in the report");

  // --- scan ---
  fs::path s1 = work / "scan1";
  expect(run("scan --system ordinary --xmax 1e5 --tmin 2 --tmax 202 --tcount 12 "
             "--nlist 0 --nlist 1 --out " +
             s1.string()) == 0,
         "scan ordinary exits 0");
  expect(fs::exists(s1 / "scan_n0_sigma1.csv") && fs::exists(s1 / "scan_summary.json"),
         "scan emits CSV and summary");
  expect(contains(s1 / "scan_summary.json", "O_C-like"),
         "ordinary classifies O_C-like");
  expect(run("scan --system sparse2k --xmax 1e4 --out " + (work / "s2").string()) == 4,
         "scan without a boundary model exits 4");

  // determinism: identical config => byte-identical outputs
  fs::path s1b = work / "scan1b";
  run("scan --system ordinary --xmax 1e5 --tmin 2 --tmax 202 --tcount 12 "
      "--nlist 0 --nlist 1 --out " +
      s1b.string());
  expect(slurp(s1 / "scan_n0_sigma1.csv") == slurp(s1b / "scan_n0_sigma1.csv") &&
             slurp(s1 / "scan_n1_sigma1.csv") == slurp(s1b / "scan_n1_sigma1.csv"),
         "identical configs give byte-identical scan CSVs");

  // --- profile ---
  fs::path p1 = work / "prof1";
  expect(run("profile --system ordinary --xmax 1e4 --target Pi --nlist 1 "
             "--grid-per-decade 40 --out " +
             p1.string()) == 0,
         "profile ordinary Pi exits 0");
  expect(contains(p1 / "profile_summary.json", "\"verdict\": \"bounded\""),
         "ordinary Pi profile verdict bounded");

  fs::path p2 = work / "prof2";
  expect(run("profile --system powers2 --xmax 1e6 --target N --nlist 1 "
             "--grid-per-decade 40 --out " +
             p2.string()) == 0,
         "profile powers2 N exits 0");
  expect(contains(p2 / "profile_summary.json", "no-density"),
         "powers2 N profile reports no-density");

  // continuous system: O_M classification on the captured window
  fs::path s3 = work / "scan3";
  expect(run("scan --system continuous-alpha:2 --xmax 1e6 --tmin 0.12 --tmax 12.12 "
             "--tcount 24 --nlist 0 --nlist 1 --nlist 2 --nlist 3 --m 2 --out " +
             s3.string()) == 0,
         "scan continuous-alpha exits 0");
  expect(contains(s3 / "scan_summary.json", "O_M-like"),
         "continuous-alpha classifies O_M-like");

  expect(run("verify --suite zeta --system powers2 --xmax 1e9 --out " +
             (work / "vz").string()) == 0,
         "verify zeta on powers2 exits 0");
  expect(contains(work / "vz" / "verify_zeta.json", "three-four-one-grid"),
         "zeta suite includes the three-four-one grid");

  // cesaro profile separates from the raw profile on the continuous system
  fs::path p3 = work / "prof3";
  expect(run("profile --system continuous-alpha:2 --xmax 1e6 --target Pi --nlist 3 "
             "--grid-per-decade 60 --grid-min 100 --out " +
             p3.string()) == 0,
         "raw continuous profile exits 0");
  expect(contains(p3 / "profile_summary.json", "unbounded-trend"),
         "raw n=3 profile trends unbounded");
  fs::path p4 = work / "prof4";
  expect(run("profile --system continuous-alpha:2 --xmax 1e6 --target Pi --nlist 3 "
             "--cesaro --m 2 --grid-per-decade 60 --grid-min 100 --out " +
             p4.string()) == 0,
         "cesaro continuous profile exits 0");
  expect(contains(p4 / "profile_summary.json", "\"verdict\": \"bounded\""),
         "cesaro n=3 profile is bounded");

  // --- config round trip ---
  fs::path c1 = work / "cfg1";
  run("profile --system ordinary --xmax 1e4 --target Pi --nlist 1 "
      "--grid-per-decade 40 --out " +
      c1.string());
  fs::path c2 = work / "cfg2";
  expect(run("profile --config " + (c1 / "config.json").string() + " --out " +
             c2.string()) == 0,
         "profile from round-tripped config exits 0");
  expect(slurp(c1 / "profile_Pi_minus_Li_n1.csv") ==
             slurp(c2 / "profile_Pi_minus_Li_n1.csv"),
         "config file reproduces the profile byte for byte");

  std::cout << (failures == 0 ? "CLI TESTS PASSED\n" : "CLI TESTS FAILED\n");
  return failures == 0 ? 0 : 1;
}
