#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "modwig/algebra.hpp"
#include "modwig/canon.hpp"
#include "modwig/errors.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/opalgebra.hpp"
#include "modwig/selftest.hpp"
#include "modwig/serialize.hpp"
#include "modwig/wigner.hpp"

namespace {

using namespace modwig;

std::string num(double x) { return canon::format(canon::snap(x)); }

std::string complex_text(Complex z) {
  return "[" + num(z.real()) + "," + num(z.imag()) + "]";
}

std::string matrix_text(const Mat& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += complex_text(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

template <typename T>
const T& payload_get(const serialize::Document& doc, const std::string& name) {
  const auto it = doc.payload.find(name);
  if (it == doc.payload.end())
    throw ParseError("document lacks a '" + name + "' entry");
  const T* value = std::get_if<T>(&it->second);
  if (value == nullptr)
    throw ParseError("'" + name + "' has the wrong kind for this command");
  return *value;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ShapeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const OracleMiss& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DimensionOne& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const HypothesisFailed& e) {
    std::cout << "deviation=" << num(e.deviation()) << "\n";
    std::cout << "status=fail\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite Hilbert C*-module engine over M_d(C): generalized inner "
      "products, modular bases, and symmetry decomposition T = phi(.)U"};
  app.require_subcommand(1);

  std::function<int()> action;

  // gram INPUT -o OUTPUT [--tol]
  {
    auto* cmd = app.add_subcommand(
        "gram", "modular Gram-Schmidt over a generator list");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(kDefaultTol);
    cmd->add_option("input", *input, "mw1 document with 'generators'")
        ->required();
    cmd->add_option("-o,--output", *output, "basis document to write")
        ->required();
    cmd->add_option("--tol", *tol, "rank tolerance");
    cmd->callback([=, &action] {
      action = [=] {
        const auto doc = serialize::read_document_file(*input);
        const auto& gens =
            payload_get<serialize::ModuleList>(doc, "generators");
        const ModularBasis basis = hmodule::modular_gram_schmidt(gens, *tol);
        serialize::Document out;
        out.d = doc.d;
        out.n = doc.n;
        out.payload.emplace("basis",
                            serialize::ModuleList(basis.elements));
        serialize::write_document_file(out, *output);
        std::cout << "generators=" << gens.size() << "\n";
        std::cout << "basis=" << basis.size() << "\n";
        std::cout << "status=pass\n";
        return 0;
      };
    });
  }

  // inner INPUT [-o OUTPUT]
  {
    auto* cmd = app.add_subcommand(
        "inner", "generalized inner product [f,g] of two module elements");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("input", *input, "mw1 document with 'f' and 'g'")
        ->required();
    cmd->add_option("-o,--output", *output, "document for the result");
    cmd->callback([=, &action] {
      action = [=] {
        const auto doc = serialize::read_document_file(*input);
        const auto& f = payload_get<ModuleElement>(doc, "f");
        const auto& g = payload_get<ModuleElement>(doc, "g");
        const AlgebraElement prod = hmodule::inner(f, g);
        if (!output->empty()) {
          serialize::Document out;
          out.d = doc.d;
          out.n = doc.n;
          out.payload.emplace("inner", prod);
          serialize::write_document_file(out, *output);
        }
        std::cout << "inner=" << matrix_text(prod) << "\n";
        std::cout << "op_norm=" << num(algebra::op_norm(prod)) << "\n";
        std::cout << "status=pass\n";
        return 0;
      };
    });
  }

  // check MAP SAMPLES [--tol]
  {
    auto* cmd = app.add_subcommand(
        "check", "verify |[Tf,Tf']| = |[f,f']| on sample pairs");
    auto map_path = std::make_shared<std::string>();
    auto samples_path = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(kDefaultTol);
    cmd->add_option("map", *map_path, "mw1 document with 'oracle'")
        ->required();
    cmd->add_option("samples", *samples_path, "mw1 document with 'samples'")
        ->required();
    cmd->add_option("--tol", *tol, "pass threshold");
    cmd->callback([=, &action] {
      action = [=] {
        const auto map_doc = serialize::read_document_file(*map_path);
        const auto& oracle = payload_get<SymmetryOracle>(map_doc, "oracle");
        const auto samples_doc = serialize::read_document_file(*samples_path);
        const auto& samples =
            payload_get<serialize::PairList>(samples_doc, "samples");
        const auto report = wigner::check_preservation(oracle, samples, *tol);
        std::cout << "pairs=" << samples.size() << "\n";
        std::cout << "max_deviation=" << num(report.max_deviation) << "\n";
        std::cout << "worst_pair=" << report.worst_pair << "\n";
        std::cout << "status=" << (report.pass ? "pass" : "fail") << "\n";
        return report.pass ? 0 : 1;
      };
    });
  }

  // synthesize INPUT -o OUTPUT [--seed]
  {
    auto* cmd = app.add_subcommand(
        "synthesize", "build the oracle Tf = phi(f)Uf from an isometry U");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    cmd->add_option("input", *input, "mw1 document with operator 'U'")
        ->required();
    cmd->add_option("-o,--output", *output, "oracle document to write")
        ->required();
    cmd->add_option("--seed", *seed, "phase seed (0 forces phi = 1)");
    cmd->callback([=, &action] {
      action = [=] {
        const auto doc = serialize::read_document_file(*input);
        const auto& u = payload_get<ModuleOperator>(doc, "U");
        const SymmetryOracle oracle = wigner::synthesize(u, *seed);
        serialize::Document out;
        out.d = doc.d;
        out.n = doc.n;
        out.payload.emplace("oracle", oracle);
        serialize::write_document_file(out, *output);
        std::cout << "d=" << doc.d << "\n";
        std::cout << "n=" << doc.n << "\n";
        std::cout << "seed=" << *seed << "\n";
        std::cout << "status=pass\n";
        return 0;
      };
    });
  }

  // decompose MAP -o OUTPUT [--tol --probes --seed]
  {
    auto* cmd = app.add_subcommand(
        "decompose", "recover (U, phi) with Tf = phi(f)Uf from an oracle");
    auto map_path = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto options = std::make_shared<DecomposeOptions>();
    cmd->add_option("map", *map_path, "mw1 document with 'oracle'")
        ->required();
    cmd->add_option("-o,--output", *output, "decomposition document to write");
    cmd->add_option("--tol", options->tol, "hypothesis tolerance");
    cmd->add_option("--probes", options->phase_probes,
                    "random phase probe count");
    cmd->add_option("--seed", options->seed, "phase probe seed");
    cmd->callback([=, &action] {
      action = [=] {
        const auto map_doc = serialize::read_document_file(*map_path);
        const auto& oracle = payload_get<SymmetryOracle>(map_doc, "oracle");
        const WignerDecomposition dec = wigner::decompose(oracle, *options);
        if (!output->empty()) {
          serialize::Document out;
          out.d = map_doc.d;
          out.n = map_doc.n;
          out.payload.emplace("U", dec.isometry);
          out.payload.emplace("phases", serialize::PhaseList(dec.phases));
          out.payload.emplace("max_residual", dec.max_residual);
          out.payload.emplace("gauge", dec.gauge_note);
          serialize::write_document_file(out, *output);
        }
        std::cout << "d=" << map_doc.d << "\n";
        std::cout << "n=" << map_doc.n << "\n";
        std::cout << "probes=" << dec.phases.size() << "\n";
        std::cout << "max_residual=" << num(dec.max_residual) << "\n";
        std::cout << "status=pass\n";
        return 0;
      };
    });
  }

  // selftest [--d --n --trials --seed --tol]
  {
    auto* cmd = app.add_subcommand(
        "selftest", "seeded property-group verification at one module shape");
    auto config = std::make_shared<selftest::Config>();
    cmd->add_option("--d", config->d, "coefficient algebra size");
    cmd->add_option("--n", config->n, "slot count");
    cmd->add_option("--trials", config->trials, "cases per group");
    cmd->add_option("--seed", config->seed, "base seed");
    cmd->add_option("--tol", config->tol, "deviation tolerance");
    cmd->callback([=, &action] {
      action = [=] {
        const selftest::Report report = selftest::run(*config);
        selftest::print(report, std::cout);
        const bool pass = report.all_pass();
        std::cout << "status=" << (pass ? "pass" : "fail") << "\n";
        return pass ? 0 : 1;
      };
    });
  }

  // obstruction [--d]
  {
    auto* cmd = app.add_subcommand(
        "obstruction",
        "the anti-branch witness: || |e_12| - |e_21| || = 1 for d > 1");
    auto d = std::make_shared<Index>(2);
    cmd->add_option("--d", *d, "coefficient algebra size");
    cmd->callback([=, &action] {
      action = [=] {
        if (*d < 1) throw ParseError("obstruction requires d >= 1");
        if (*d == 1)
          throw DimensionOne(
              "no obstruction exists for d = 1: |a| = |a*| for every scalar");
        Mat a = Mat::Zero(*d, *d);
        a(0, 1) = 1.0;
        const Mat abs_a = algebra::abs(a);
        const Mat abs_a_star = algebra::abs(Mat(a.adjoint()));
        std::cout << "witness=e_12\n";
        std::cout << "abs_a=" << matrix_text(abs_a) << "\n";
        std::cout << "abs_a_star=" << matrix_text(abs_a_star) << "\n";
        std::cout << "distance=" << num(algebra::op_norm(abs_a - abs_a_star))
                  << "\n";
        std::cout << "status=pass\n";
        return 0;
      };
    });
  }

  CLI11_PARSE(app, argc, argv);
  return run_guarded(action);
}
