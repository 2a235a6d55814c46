#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rangectl/audit.hpp"
#include "rangectl/cli.hpp"
#include "rangectl/control.hpp"
#include "rangectl/election.hpp"
#include "rangectl/errors.hpp"
#include "rangectl/gadgets.hpp"
#include "rangectl/io.hpp"
#include "rangectl/oracles.hpp"

namespace py = pybind11;
using namespace rangectl;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.num(), r.den());
}

py::dict tally_dict(const Tally& t) {
  py::dict totals;
  for (std::size_t i = 0; i < t.candidates.size(); ++i) totals[py::str(t.candidates[i])] = to_fraction(t.totals[i]);
  return totals;
}

std::vector<BallotGroup> to_groups(const std::vector<std::pair<std::vector<int>, std::int64_t>>& ballots) {
  std::vector<BallotGroup> out;
  out.reserve(ballots.size());
  for (const auto& [scores, mult] : ballots) out.push_back({scores, mult});
  return out;
}

std::vector<std::pair<std::vector<int>, std::int64_t>> from_groups(const std::vector<BallotGroup>& groups) {
  std::vector<std::pair<std::vector<int>, std::int64_t>> out;
  for (const auto& g : groups) out.emplace_back(g.scores, g.multiplicity);
  return out;
}

}  // namespace

PYBIND11_MODULE(rangectl, m) {
  m.doc() = "Range voting and normalized range voting: tallies, control search, reductions and audits.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::enum_<VotingSystem>(m, "VotingSystem")
      .value("RV", VotingSystem::Range)
      .value("NRV", VotingSystem::Normalized);
  py::enum_<ControlFamily>(m, "ControlFamily")
      .value("ADD_CANDIDATES", ControlFamily::AddCandidates)
      .value("DELETE_CANDIDATES", ControlFamily::DeleteCandidates)
      .value("ADD_VOTERS", ControlFamily::AddVoters)
      .value("DELETE_VOTERS", ControlFamily::DeleteVoters)
      .value("PARTITION_CANDIDATES", ControlFamily::PartitionCandidates)
      .value("RUNOFF_PARTITION_CANDIDATES", ControlFamily::RunoffPartitionCandidates)
      .value("PARTITION_VOTERS", ControlFamily::PartitionVoters);
  py::enum_<Goal>(m, "Goal").value("CONSTRUCTIVE", Goal::Constructive).value("DESTRUCTIVE", Goal::Destructive);
  py::enum_<TieModel>(m, "TieModel").value("TP", TieModel::Promote).value("TE", TieModel::Eliminate);
  py::enum_<Decision>(m, "Decision")
      .value("YES", Decision::Yes)
      .value("NO", Decision::No)
      .value("BUDGET_EXCEEDED", Decision::BudgetExceeded);

  py::class_<Election>(m, "Election")
      .def(py::init([](int range, std::vector<std::string> candidates,
                       const std::vector<std::pair<std::vector<int>, std::int64_t>>& ballots) {
             return Election(range, std::move(candidates), to_groups(ballots));
           }),
           py::arg("range"), py::arg("candidates"), py::arg("ballots"),
           "ballots: list of (scores, multiplicity)")
      .def_property_readonly("range", &Election::range)
      .def_property_readonly("candidates", &Election::candidates)
      .def_property_readonly("ballots", [](const Election& e) { return from_groups(e.ballots()); })
      .def_property_readonly("voter_count", &Election::voter_count)
      .def("project", [](const Election& e, const std::vector<std::string>& subset) { return project(e, subset); })
      .def("scale", [](const Election& e, int factor) { return scale_election(e, factor); })
      .def("__eq__", [](const Election& a, const Election& b) { return a == b; })
      .def("__str__", [](const Election& e) { return serialize_election(e); });

  m.def(
      "tally", [](const Election& e, VotingSystem s) { return tally_dict(tally(e, s)); }, py::arg("election"),
      py::arg("system") = VotingSystem::Normalized, "Totals per candidate as Fractions.");
  m.def(
      "winners", [](const Election& e, VotingSystem s) { return tally(e, s).winners; }, py::arg("election"),
      py::arg("system") = VotingSystem::Normalized);
  m.def(
      "normalize_ballot",
      [](const std::vector<int>& scores, int range) -> std::optional<py::list> {
        const auto n = normalize_ballot(scores, range);
        if (!n) return std::nullopt;
        py::list out;
        for (const auto& r : *n) out.append(to_fraction(r));
        return out;
      },
      py::arg("scores"), py::arg("range"));

  py::class_<Witness>(m, "Witness")
      .def_readonly("candidates", &Witness::candidates)
      .def_readonly("counts", &Witness::counts);

  py::class_<ControlOutcome>(m, "ControlOutcome")
      .def_readonly("decision", &ControlOutcome::decision)
      .def_readonly("witness", &ControlOutcome::witness)
      .def_readonly("explored", &ControlOutcome::explored);

  py::class_<ControlInstance>(m, "ControlInstance")
      .def(py::init<>())
      .def_readwrite("base", &ControlInstance::base)
      .def_readwrite("system", &ControlInstance::system)
      .def_readwrite("family", &ControlInstance::family)
      .def_readwrite("goal", &ControlInstance::goal)
      .def_readwrite("ties", &ControlInstance::ties)
      .def_readwrite("distinguished", &ControlInstance::distinguished)
      .def_readwrite("limit", &ControlInstance::limit)
      .def_readwrite("spoilers", &ControlInstance::spoilers)
      .def_property(
          "pool", [](const ControlInstance& c) { return from_groups(c.pool); },
          [](ControlInstance& c, const std::vector<std::pair<std::vector<int>, std::int64_t>>& p) {
            c.pool = to_groups(p);
          })
      .def("validate", &ControlInstance::validate)
      .def("__str__", [](const ControlInstance& c) { return serialize_instance(c); });

  m.def(
      "solve",
      [](const ControlInstance& inst, std::uint64_t budget, unsigned threads) {
        py::gil_scoped_release release;
        return solve(inst, SearchOptions{budget, threads});
      },
      py::arg("instance"), py::arg("budget") = SearchOptions{}.budget, py::arg("threads") = 1u);
  m.def("replay_witness", &replay_witness, py::arg("instance"), py::arg("witness"));
  m.def("describe_witness", &describe_witness, py::arg("instance"), py::arg("witness"));

  m.def("parse_election", &parse_election, py::arg("text"));
  m.def(
      "parse_instance",
      [](const std::string& text) -> std::optional<ControlInstance> { return parse_election_file(text).instance; },
      py::arg("text"), "The control instance described by an election file, or None.");
  m.def("serialize_election", &serialize_election, py::arg("election"));

  py::class_<HittingSetInstance>(m, "HittingSetInstance")
      .def(py::init([](std::vector<std::string> elements, std::vector<std::vector<std::size_t>> sets, std::int64_t k) {
             HittingSetInstance h{std::move(elements), std::move(sets), k};
             h.normalize();
             h.validate();
             return h;
           }),
           py::arg("elements"), py::arg("sets"), py::arg("k"))
      .def_readonly("elements", &HittingSetInstance::elements)
      .def_readonly("sets", &HittingSetInstance::sets)
      .def_readonly("k", &HittingSetInstance::k)
      .def("encode", &HittingSetInstance::encode)
      .def_static("decode", &HittingSetInstance::decode);

  py::class_<X3CInstance>(m, "X3CInstance")
      .def(py::init([](std::vector<std::string> elements, std::vector<std::vector<std::size_t>> sets) {
             X3CInstance x{std::move(elements), std::move(sets)};
             x.normalize();
             x.validate();
             return x;
           }),
           py::arg("elements"), py::arg("sets"))
      .def_readonly("elements", &X3CInstance::elements)
      .def_readonly("sets", &X3CInstance::sets)
      .def("encode", &X3CInstance::encode)
      .def_static("decode", &X3CInstance::decode);

  m.def(
      "solve_hitting_set",
      [](const HittingSetInstance& h) {
        const auto a = solve_hitting_set(h);
        return py::make_tuple(a.yes, a.minimum_size, a.witness);
      },
      py::arg("instance"), "(yes, minimum size, lexicographically first minimum hitting set or None)");
  m.def(
      "solve_x3c",
      [](const X3CInstance& x) {
        const auto a = solve_x3c(x);
        return py::make_tuple(a.yes, a.witness);
      },
      py::arg("instance"));

  py::class_<GadgetOutput>(m, "Gadget")
      .def_readonly("election", &GadgetOutput::election)
      .def_readonly("claim", &GadgetOutput::claim_text)
      .def_property_readonly("instances",
                             [](const GadgetOutput& g) {
                               py::dict out;
                               for (const auto& li : g.instances) out[py::str(li.label)] = li.instance;
                               return out;
                             })
      .def_property_readonly("identities", [](const GadgetOutput& g) {
        py::list out;
        for (const auto& r : check_score_identities(g)) {
          out.append(py::make_tuple(r.claim, r.holds, r.must_hold));
        }
        return out;
      });

  m.def(
      "gadget_hs_candidates", [](const HittingSetInstance& h) { return gadget_hs_candidates(h); }, py::arg("instance"));
  m.def(
      "gadget_hs_delete_constructive", [](const HittingSetInstance& h) { return gadget_hs_delete_constructive(h); },
      py::arg("instance"));
  m.def("gadget_rhs_voter_partition_tp", &gadget_rhs_voter_partition_tp, py::arg("instance"));
  m.def(
      "gadget_x3c_voter_partition_te", [](const X3CInstance& x) { return gadget_x3c_voter_partition_te(x); },
      py::arg("instance"));
  m.def("gadget_deletion_to_candidate_partition", &gadget_deletion_to_candidate_partition, py::arg("source"),
        py::arg("distinguished"), py::arg("limit"));
  m.def(
      "gadget_hs_destructive_candidate_partition",
      [](const HittingSetInstance& h) { return gadget_hs_destructive_candidate_partition(h); }, py::arg("instance"));

  m.def(
      "audit",
      [](const std::string& gadget, const std::string& bounds, bool exhaustive, std::uint64_t seed,
         std::size_t trials, unsigned threads, bool json) {
        AuditSpec spec;
        spec.gadget = parse_gadget_kind(gadget);
        spec.mode = exhaustive ? SourceMode::Exhaustive : SourceMode::Random;
        spec.bounds = parse_bounds(bounds);
        spec.seed = seed;
        spec.trials = trials;
        spec.threads = threads;
        AuditReport report;
        {
          py::gil_scoped_release release;
          report = audit_gadget(spec);
        }
        py::dict out;
        out["agreement"] = report.agreement;
        out["agree"] = report.agree;
        out["disagree"] = report.disagree;
        out["budget_exceeded"] = report.budget_exceeded;
        out["required_identity_failures"] = report.required_identity_failures;
        std::vector<std::string> counterexamples;
        for (const auto& r : report.counterexamples) counterexamples.push_back(r.encoding);
        out["counterexamples"] = counterexamples;
        out["report"] = json ? report_json_lines(report) : report_text(report);
        return out;
      },
      py::arg("gadget"), py::arg("bounds") = "", py::arg("exhaustive") = true, py::arg("seed") = 0,
      py::arg("trials") = 0, py::arg("threads") = 1u, py::arg("json") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
