#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cgf2/decompose.hpp"
#include "cgf2/oracle.hpp"
#include "cgf2/stabilizer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitRefused = 3;

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

cgf2::CliffordTableau load_tableau(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::size_t line = 0;
  return cgf2::read_tableau(in, line);
}

cgf2::GateSeq load_circuit(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return cgf2::read_circuit(in);
}

cgf2::StabilizerRep load_stabilizer(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return cgf2::read_stabilizer(in);
}

void print_dense(const cgf2::DenseOperator& op) {
  std::cout << "dim " << op.dim() << '\n';
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (std::size_t c = 0; c < op.dim(); ++c) {
      if (c) std::cout << ' ';
      std::cout << cgf2::format_amplitude_value(op.at(r, c).real()) << ' '
                << cgf2::format_amplitude_value(op.at(r, c).imag());
    }
    std::cout << '\n';
  }
}

int run_verify(const std::string& circuit_path, const std::string& tableau_path,
               const std::string& stabilizer_path, double tol) {
  const cgf2::GateSeq circuit = load_circuit(circuit_path);
  if (circuit.n > cgf2::kMaxDenseOperatorQubits) {
    std::cerr << "refusing dense verification for n = " << circuit.n << " (cap "
              << cgf2::kMaxDenseOperatorQubits << ")\n";
    return kExitRefused;
  }
  const cgf2::CliffordTableau tableau =
      tableau_path.empty() ? cgf2::fold_tableau(circuit) : load_tableau(tableau_path);
  if (tableau.n() != circuit.n) {
    std::cerr << "tableau qubit count does not match the circuit\n";
    return kExitInputError;
  }
  const cgf2::DenseOperator unitary = cgf2::dense_from_gates(circuit);
  bool ok = true;

  // Conjugation images of all 2n generators, phase included.
  std::size_t bad_generator = 2 * circuit.n;
  double worst = 0.0;
  for (std::size_t k = 0; k < 2 * circuit.n; ++k) {
    cgf2::PauliElement gen;
    gen.n = circuit.n;
    gen.a = cgf2::BinVec::unit(2 * circuit.n, k);
    const cgf2::DenseOperator want = unitary * cgf2::dense_pauli(gen) * unitary.dagger();
    const cgf2::DenseOperator got = cgf2::dense_pauli(cgf2::conjugate_pauli(tableau, gen));
    double dev = 0.0;
    for (std::size_t e = 0; e < want.m.size(); ++e)
      dev = std::max(dev, std::abs(want.m[e] - got.m[e]));
    worst = std::max(worst, dev);
    if (dev > tol && bad_generator == 2 * circuit.n) bad_generator = k;
  }
  if (bad_generator < 2 * circuit.n) {
    std::cout << "generators: FAIL at generator " << bad_generator << " (max deviation "
              << worst << ")\n";
    ok = false;
  } else {
    std::cout << "generators: PASS (max deviation " << worst << ")\n";
  }

  // Closed-form matrix against the circuit unitary, up to one global phase.
  const auto matrix_cmp =
      cgf2::equal_up_to_phase(cgf2::dense_from_tableau(tableau), unitary, tol);
  std::cout << "closed-form matrix: " << (matrix_cmp.equal ? "PASS" : "FAIL")
            << " (max deviation " << matrix_cmp.max_deviation << ")\n";
  ok = ok && matrix_cmp.equal;

  if (!stabilizer_path.empty()) {
    const cgf2::StabilizerRep state = load_stabilizer(stabilizer_path);
    if (state.n != circuit.n) {
      std::cerr << "stabilizer qubit count does not match the circuit\n";
      return kExitInputError;
    }
    const cgf2::StabilizerRep evolved = cgf2::apply_clifford(state, tableau);
    const auto amp_cmp =
        cgf2::equal_up_to_phase(cgf2::state_vector(cgf2::canonical_form(evolved)),
                                cgf2::projector_state(evolved), tol);
    std::cout << "stabilizer amplitudes: " << (amp_cmp.equal ? "PASS" : "FAIL")
              << " (max deviation " << amp_cmp.max_deviation << ")\n";
    ok = ok && amp_cmp.equal;
  }

  std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Clifford tableaux, stabilizer states and their gate decompositions over GF(2)"};
  app.require_subcommand(1);

  std::string circuit_path, tableau_path, stabilizer_path, scheme = "cols";
  std::vector<std::string> tableau_paths;
  std::size_t gen_n = 1;
  std::uint64_t gen_seed = 0;
  double tol = 1e-10;

  auto* cmd_tableau = app.add_subcommand("tableau", "fold a circuit into its tableau");
  cmd_tableau->add_option("circuit", circuit_path)->required();

  auto* cmd_compose =
      app.add_subcommand("compose", "product of tableaux; the first listed acts first");
  cmd_compose->add_option("tableaux", tableau_paths)->required()->expected(-1);

  auto* cmd_invert = app.add_subcommand("invert", "inverse of a tableau");
  cmd_invert->add_option("tableau", tableau_path)->required();

  auto* cmd_decompose =
      app.add_subcommand("decompose", "factor a tableau into one/two-qubit gates");
  cmd_decompose->add_option("tableau", tableau_path)->required();
  cmd_decompose->add_option("--scheme", scheme, "cols (column reduction) or blocks")
      ->check(CLI::IsMember({"cols", "blocks"}));

  auto* cmd_canon = app.add_subcommand("canon", "canonical form of a stabilizer state");
  cmd_canon->add_option("stabilizer", stabilizer_path)->required();

  auto* cmd_amplitudes =
      app.add_subcommand("amplitudes", "standard-basis amplitudes of a stabilizer state");
  cmd_amplitudes->add_option("stabilizer", stabilizer_path)->required();

  auto* cmd_theorem6 = app.add_subcommand(
      "theorem6", "closed-form dense matrix of a tableau (quadratic-form entries)");
  cmd_theorem6->add_option("tableau", tableau_path)->required();

  auto* cmd_verify =
      app.add_subcommand("verify", "check tableau algebra against the dense oracle");
  cmd_verify->add_option("circuit", circuit_path)->required();
  cmd_verify->add_option("--tableau", tableau_path,
                         "tableau to check instead of the folded circuit");
  cmd_verify->add_option("--stabilizer", stabilizer_path,
                         "also check amplitude expansion on this state");
  cmd_verify->add_option("--tol", tol, "comparison tolerance");

  auto* cmd_gen =
      app.add_subcommand("gen-random-tableau", "deterministic random tableau");
  cmd_gen->add_option("--n", gen_n, "qubit count")->required();
  cmd_gen->add_option("--seed", gen_seed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_tableau->parsed()) {
      cgf2::write_tableau(std::cout, cgf2::fold_tableau(load_circuit(circuit_path)));
    } else if (cmd_compose->parsed()) {
      cgf2::CliffordTableau acc = load_tableau(tableau_paths.front());
      for (std::size_t k = 1; k < tableau_paths.size(); ++k)
        acc = cgf2::compose(load_tableau(tableau_paths[k]), acc);
      cgf2::write_tableau(std::cout, acc);
    } else if (cmd_invert->parsed()) {
      cgf2::write_tableau(std::cout, cgf2::inverse(load_tableau(tableau_path)));
    } else if (cmd_decompose->parsed()) {
      const cgf2::CliffordTableau q = load_tableau(tableau_path);
      const cgf2::GateSeq seq =
          scheme == "cols" ? cgf2::decompose_scheme1(q) : cgf2::decompose_scheme2(q);
      cgf2::write_circuit(std::cout, seq, true);
    } else if (cmd_canon->parsed()) {
      const auto canon = cgf2::canonical_form(load_stabilizer(stabilizer_path));
      std::cout << "n " << (canon.ra + canon.rb + canon.rc) << '\n';
      std::cout << "ra " << canon.ra << " rb " << canon.rb << " rc " << canon.rc << '\n';
      std::cout << "T\n";
      cgf2::write_matrix(std::cout, canon.t);
      std::cout << "Z\n";
      cgf2::write_matrix(std::cout, canon.z);
      auto put_bits = [](const char* label, const cgf2::BinVec& v) {
        std::cout << label;
        if (v.len()) std::cout << ' ' << v.str();
        std::cout << '\n';
      };
      put_bits("fa", canon.fa);
      put_bits("bab", canon.b_ab);
      put_bits("bc", canon.b_c);
    } else if (cmd_amplitudes->parsed()) {
      cgf2::write_amplitudes(std::cout,
                             cgf2::canonical_form(load_stabilizer(stabilizer_path)));
    } else if (cmd_theorem6->parsed()) {
      print_dense(cgf2::dense_from_tableau(load_tableau(tableau_path)));
    } else if (cmd_verify->parsed()) {
      return run_verify(circuit_path, tableau_path, stabilizer_path, tol);
    } else if (cmd_gen->parsed()) {
      std::uint64_t state = gen_seed;
      cgf2::write_tableau(std::cout, cgf2::random_tableau(gen_n, state));
    }
  } catch (const cgf2::CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
