#ifndef GRAPHLIFT_STRIPS_HPP
#define GRAPHLIFT_STRIPS_HPP

#include <compare>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphlift/util.hpp"

namespace graphlift {

// Built-in inequality predicate. It is static, binary, never declared in a
// domain and never learnable; its denotation over any object set is
// {(a,b) : a != b}. Literals reference it with this sentinel id.
constexpr int kNeqPredicate = -1;

struct Predicate {
    std::string name;
    int arity = 0;

    friend bool operator==(const Predicate&, const Predicate&) = default;
};

// A literal inside an action schema: predicate applied to parameter indices.
struct SchemaLiteral {
    int predicate = 0;            // index into Domain::predicates, or kNeqPredicate
    std::vector<int> args;        // parameter indices, |args| == arity
    bool positive = true;

    friend auto operator<=>(const SchemaLiteral&, const SchemaLiteral&) = default;
};

struct ActionSchema {
    std::string name;
    int param_count = 0;
    std::vector<SchemaLiteral> static_pre;  // literals over static predicates (incl. neq)
    std::vector<SchemaLiteral> pre;
    std::vector<SchemaLiteral> eff;

    friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct Domain {
    std::string name;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> schemas;

    int predicate_id(const std::string& n) const;
    int schema_id(const std::string& n) const;

    // A predicate is static iff it appears in no schema's effects.
    std::vector<bool> static_predicates() const;

    // Sorts literal sets into canonical order and checks all invariants.
    // Throws invalid_input on violation.
    void canonicalize_and_validate();

    friend bool operator==(const Domain&, const Domain&) = default;
};

struct GroundAtom {
    int predicate = 0;
    std::vector<int> objects;  // indices into Instance::objects

    friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

struct Instance {
    std::string name;
    std::string domain_name;
    std::vector<std::string> objects;       // sorted lexicographically
    std::vector<GroundAtom> init;           // sorted
    std::vector<GroundAtom> goal;           // sorted; may be empty

    int object_id(const std::string& n) const;

    // Sorts objects/atoms and validates against the domain.
    void canonicalize_and_validate(const Domain& domain);

    friend bool operator==(const Instance&, const Instance&) = default;
};

// A state is the set of ground atoms that are true (closed world), as a bit
// vector over the instance's atom table. Static-predicate atoms are included;
// they never change across transitions.
using State = BitVec;

struct GroundAction {
    int schema = 0;
    std::vector<int> binding;   // object index per parameter
    // Precompiled dynamic-and-static precondition / effect atom ids.
    std::vector<int> pre_pos;
    std::vector<int> pre_neg;
    std::vector<int> add;
    std::vector<int> del;
};

// Grounded view of (Domain, Instance): atom table, initial state and the
// statically pruned ground actions in deterministic order.
class GroundedTask {
  public:
    GroundedTask(const Domain& domain, const Instance& instance);

    const Domain& domain() const { return *domain_; }
    const Instance& instance() const { return *instance_; }

    int num_atoms() const { return static_cast<int>(atoms_.size()); }
    const std::vector<GroundAtom>& atoms() const { return atoms_; }
    const GroundAtom& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
    int atom_id(const GroundAtom& a) const;
    bool atom_is_static(int id) const { return static_atom_[static_cast<std::size_t>(id)]; }
    std::string atom_name(int id) const;

    const std::vector<GroundAction>& actions() const { return actions_; }
    std::string action_name(const GroundAction& a) const;

    State initial_state() const { return init_; }
    // Goal test; throws invalid_input if the instance has no goal.
    bool goal_defined() const { return !instance_->goal.empty(); }
    bool is_goal(const State& s) const;

    State state_from_atoms(const std::vector<GroundAtom>& atoms) const;
    std::vector<GroundAtom> state_atoms(const State& s) const;

    bool applicable(const State& s, const GroundAction& a) const;
    State apply(const State& s, const GroundAction& a) const;

  private:
    const Domain* domain_;
    const Instance* instance_;
    std::vector<GroundAtom> atoms_;
    std::unordered_map<std::uint64_t, int> atom_index_;  // hash of (pred, objs) -> id
    std::vector<bool> static_atom_;
    std::vector<GroundAction> actions_;
    State init_;
    std::vector<int> goal_ids_;
};

// Enumerates all statically consistent ground actions of the domain over the
// instance's objects, in lexicographic (schema name, binding) order.
std::vector<GroundAction> ground(const Domain& domain, const Instance& instance);

// ---- text format (untyped STRIPS subset) ----

Domain parse_domain(const std::string& text);
Instance parse_problem(const std::string& text, const Domain& domain);
std::string emit_domain(const Domain& domain);
std::string emit_problem(const Instance& instance, const Domain& domain);

Domain load_domain_file(const std::string& path);
Instance load_problem_file(const std::string& path, const Domain& domain);

}  // namespace graphlift

#endif
