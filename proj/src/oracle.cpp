#include "lsattack/oracle.hpp"

namespace lsattack::oracle {

AttackObjective::AttackObjective(const models::FeedForwardNet& victim,
                                 Mode mode, int label, std::uint64_t budget)
    : victim_(victim), mode_(mode), label_(label) {
  if (label < 0 || static_cast<std::size_t>(label) >= victim.num_classes())
    throw std::invalid_argument("label out of range for the victim");
  ledger_.budget = budget;
}

double AttackObjective::evaluate(const Image& x_adv) {
  if (ledger_.count >= ledger_.budget) throw BudgetExhausted{};
  LossReport report = models::predict_loss(victim_, x_adv.data, label_);
  ++ledger_.count;
  double f = mode_ == Mode::untargeted ? report.loss : -report.loss;
  ledger_.trajectory.emplace_back(ledger_.count, f);
  bool fooled = mode_ == Mode::untargeted ? report.predicted != label_
                                          : report.predicted == label_;
  if (fooled && !ledger_.success) {
    ledger_.success = true;
    ledger_.first_success_at = ledger_.count;
  }
  return f;
}

BlockObjective::BlockObjective(AttackObjective& objective, const Image& x,
                               const blocks::BlockGrid& grid, double eps,
                               bool clip, Options options)
    : objective_(objective),
      x_(x),
      grid_(grid),
      eps_(eps),
      clip_(clip),
      options_(options) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
}

double BlockObjective::eval_impl(const setfn::ElementSet& s) {
  last_image_ = blocks::assemble_perturbation(x_, grid_, s, eps_, clip_);
  last_set_ = s;
  return objective_.evaluate(last_image_);
}

void BlockObjective::post_eval(const setfn::ElementSet&, double) {
  if (options_.stop_on_success && objective_.ledger().success)
    throw SuccessDetected{};
}

}  // namespace lsattack::oracle
