// Copyright 2026 The peergrade Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "peergrade/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "peergrade/error.hpp"
#include "peergrade/workflow.hpp"

namespace peergrade {
namespace {

// Independent random streams, so adding draws to one part of the model does
// not shift every other draw.
enum Stream : std::uint64_t {
  kAffinity = 1,
  kNominations,
  kSchedule,
  kQuality,
  kProfessor,
  kParticipation,
  kGrading,
  kAcquaintance,
};

std::mt19937_64 stream(std::uint64_t seed, Stream s) { return std::mt19937_64(mix_seed(seed, s)); }

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidConfig, what);
}

double truncated_normal(const QualityDistribution& q, std::mt19937_64& rng) {
  std::normal_distribution<double> n(q.mean, q.sd);
  for (int i = 0; i < 10000; ++i) {
    const double x = n(rng);
    if (x >= 0.0 && x <= 5.0) return x;
  }
  return std::clamp(q.mean, 0.0, 5.0);
}

int clamp_grade(double x) { return static_cast<int>(std::clamp(std::round(x), 0.0, 5.0)); }

Instant seconds(double hours) { return static_cast<Instant>(std::llround(hours * 3600.0)); }

}  // namespace

void SimulationConfig::validate() const {
  require(students >= 2, "students must be at least 2");
  require(skills >= 1, "skills must be at least 1");
  require(posts_per_student_rate >= 0.0 && std::isfinite(posts_per_student_rate),
          "posts_per_student_rate must be finite and >= 0");
  require(std::isfinite(like_bias) && std::isfinite(dislike_bias), "biases must be finite");
  require(grader_noise >= 0.0 && professor_noise >= 0.0, "noise must be >= 0");
  require(participation_prob >= 0.0 && participation_prob <= 1.0, "participation_prob must be in [0, 1]");
  require(acquaintance_prob >= 0.0 && acquaintance_prob <= 1.0, "acquaintance_prob must be in [0, 1]");
  require(quality.sd > 0.0 && std::isfinite(quality.mean), "quality needs sd > 0");
  require(reviewers_per_post >= 1, "reviewers_per_post must be at least 1");
  require(window_hours > 0.0, "window_hours must be positive");
  require(skill_spacing_days >= 0.0 && skill_open_days > 0.0, "skill schedule must be positive");
  require(buckets.dislike_max >= 0 && buckets.dislike_max <= buckets.neutral_max && buckets.neutral_max <= 5,
          "rating buckets must satisfy 0 <= dislike_max <= neutral_max <= 5");
}

double GraderModel::bias(RelationshipClass rel) const noexcept {
  switch (rel) {
    case RelationshipClass::Like: return like_bias;
    case RelationshipClass::Dislike: return -dislike_bias;
    case RelationshipClass::Neutral: return neutral_bias;
    case RelationshipClass::Unknown: return unknown_bias;
  }
  return 0.0;
}

GraderModel GraderModel::from(const SimulationConfig& cfg) {
  GraderModel m;
  m.like_bias = cfg.like_bias;
  m.dislike_bias = cfg.dislike_bias;
  m.noise = cfg.grader_noise;
  return m;
}

Grade grader_response(double true_quality, RelationshipClass rel, const GraderModel& model,
                      std::mt19937_64& rng) {
  double x = true_quality + model.bias(rel);
  if (model.noise > 0.0) x += std::normal_distribution<double>(0.0, model.noise)(rng);
  return Grade(clamp_grade(x));
}

Cohort generate_cohort(const SimulationConfig& cfg) {
  const std::size_t n = cfg.students;
  if (n < 2 * cfg.min_nominations + 1) {
    fail(ErrorCode::CohortTooSmall, std::to_string(n) + " students cannot each nominate " +
                                        std::to_string(cfg.min_nominations) + " liked and disliked peers");
  }
  Cohort c;
  c.db = SociometryDB(cfg.buckets);
  for (std::uint32_t i = 1; i <= n; ++i) {
    c.roster.push_back(StudentId{i});
    c.db.enroll(StudentId{i});
  }

  auto arng = stream(cfg.seed, kAffinity);
  std::normal_distribution<double> z(0.0, 1.0);
  c.affinity.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) c.affinity[i][j] = z(arng);

  auto nrng = stream(cfg.seed, kNominations);
  const std::size_t peers = n - 1;
  // Room for extras without the two lists touching.
  const std::size_t max_each = peers / 2;
  std::uniform_int_distribution<std::size_t> extra(0, cfg.extra_nominations);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.affinity[i][a] > c.affinity[i][b]; });
    const std::size_t n_like = std::min(max_each, cfg.min_nominations + extra(nrng));
    const std::size_t n_dislike = std::min(max_each, cfg.min_nominations + extra(nrng));
    std::vector<StudentId> liked, disliked;
    for (std::size_t k = 0; k < n_like; ++k) liked.push_back(StudentId{static_cast<std::uint32_t>(order[k] + 1)});
    for (std::size_t k = 0; k < n_dislike; ++k) {
      disliked.push_back(StudentId{static_cast<std::uint32_t>(order[peers - 1 - k] + 1)});
    }
    c.db.record_nominations(StudentId{static_cast<std::uint32_t>(i + 1)}, liked, disliked,
                            cfg.min_nominations);
  }
  return c;
}

namespace {

struct PlannedPost {
  Instant at = 0;
  StudentId author;
  SkillId skill;
};

enum class EventKind { Submit, Complete, Sweep };

struct Event {
  Instant at = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Submit;
  std::size_t index = 0;  // planned post or assignment id
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return a.at != b.at ? a.at > b.at : a.seq > b.seq;
  }
};

class Semester {
 public:
  explicit Semester(const SimulationConfig& cfg)
      : cfg_(cfg),
        model_(GraderModel::from(cfg)),
        cohort_(generate_cohort(cfg)),
        wf_(make_config(cfg), cohort_.db),
        quality_rng_(stream(cfg.seed, kQuality)),
        prof_rng_(stream(cfg.seed, kProfessor)),
        part_rng_(stream(cfg.seed, kParticipation)),
        grade_rng_(stream(cfg.seed, kGrading)),
        acq_rng_(stream(cfg.seed, kAcquaintance)) {}

  Dataset run() {
    train_everyone();
    plan_posts();
    while (!queue_.empty()) {
      const Event e = queue_.top();
      queue_.pop();
      switch (e.kind) {
        case EventKind::Submit: on_submit(e); break;
        case EventKind::Complete: on_complete(e); break;
        case EventKind::Sweep: on_sweep(e.at); break;
      }
    }
    Dataset ds = build_dataset(wf_);
    return ds;
  }

 private:
  static WorkflowConfig make_config(const SimulationConfig& cfg) {
    WorkflowConfig w;
    w.assignment.reviewers_per_post = cfg.reviewers_per_post;
    w.assignment.window = seconds(cfg.window_hours);
    w.assignment.redraw_expired = cfg.redraw_expired;
    w.assignment.seed = mix_seed(cfg.seed, 99);
    w.rounding = cfg.rounding;
    return w;
  }

  void push(Instant at, EventKind kind, std::size_t index) { queue_.push({at, seq_++, kind, index}); }

  void train_everyone() {
    const std::vector<TrainingAnswer> answers{{1, Grade(2)}, {2, Grade(4)}};
    for (std::uint32_t s = 1; s <= cfg_.skills; ++s) {
      wf_.add_training_page(TrainingPage{SkillId{s}, "rubric", {{1, Grade(2)}, {2, Grade(4)}}});
      for (StudentId st : cohort_.roster) wf_.complete_training(st, SkillId{s}, answers);
    }
  }

  void plan_posts() {
    auto rng = stream(cfg_.seed, kSchedule);
    std::poisson_distribution<int> count(cfg_.posts_per_student_rate);
    const double open = cfg_.skill_open_days * 24.0;
    std::uniform_real_distribution<double> when(0.0, open);
    for (std::uint32_t s = 1; s <= cfg_.skills; ++s) {
      const double opens_at = (s - 1) * cfg_.skill_spacing_days * 24.0;
      for (StudentId st : cohort_.roster) {
        const int k = cfg_.posts_per_student_rate > 0.0 ? count(rng) : 0;
        std::vector<Instant> times;
        for (int i = 0; i < k; ++i) times.push_back(seconds(opens_at + when(rng)));
        std::sort(times.begin(), times.end());
        for (Instant t : times) {
          planned_.push_back({t, st, SkillId{s}});
          push(t, EventKind::Submit, planned_.size() - 1);
        }
      }
    }
  }

  void on_submit(const Event& e) {
    const PlannedPost& plan = planned_[e.index];
    std::optional<PostId> parent;
    if (auto it = last_post_.find({plan.author, plan.skill}); it != last_post_.end()) parent = it->second;
    SubmitResult r;
    try {
      r = wf_.submit_post(plan.author, plan.skill, "post-" + std::to_string(e.index), e.at, parent);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::EmptyPool) return;
      throw;
    }
    last_post_[{plan.author, plan.skill}] = r.post.id;
    const double q = truncated_normal(cfg_.quality, quality_rng_);
    quality_[r.post.id] = q;
    double noisy = q;
    if (cfg_.professor_noise > 0.0) noisy += std::normal_distribution<double>(0.0, cfg_.professor_noise)(prof_rng_);
    wf_.record_professor_rating(r.post.id, Grade(clamp_grade(noisy)), "reply");
    for (const Assignment& a : r.assignments) on_issue(a);
  }

  void on_issue(const Assignment& a) {
    if (auto prompt = wf_.rating_prompt(a.id)) answer(*prompt);
    std::bernoulli_distribution done(cfg_.participation_prob);
    if (done(part_rng_)) {
      const Instant span = a.deadline - a.issued_at;
      std::uniform_int_distribution<Instant> delay(1, span);
      push(a.issued_at + delay(part_rng_), EventKind::Complete, a.id.value);
    }
    push(a.deadline + 1, EventKind::Sweep, 0);
  }

  void answer(const RatingPrompt& p) {
    std::bernoulli_distribution knows(cfg_.acquaintance_prob);
    int score = 0;
    if (knows(acq_rng_)) {
      const double aff = cohort_.affinity[p.grader.value - 1][p.author.value - 1];
      score = std::clamp(static_cast<int>(std::lround(cfg_.rating_center + cfg_.rating_scale * aff)), 1, 5);
    }
    wf_.sociometry().record_peer_rating(p.grader, p.author, score, p.issued_at);
  }

  void on_complete(const Event& e) {
    const AssignmentId id{static_cast<std::uint32_t>(e.index)};
    const Assignment& a = wf_.engine().get(id);
    if (a.status != AssignmentStatus::Pending) return;
    const Post& post = wf_.post(a.post);
    const RelationshipClass rel = wf_.sociometry().classify(a.grader, post.author);
    const Grade g = grader_response(quality_.at(a.post), rel, model_, grade_rng_);
    wf_.submit_assessment(id, g, "simulated feedback", e.at);
  }

  void on_sweep(Instant at) {
    const ExpiryResult r = wf_.expire_assignments(at);
    for (const Assignment& a : r.replacements) on_issue(a);
  }

  const SimulationConfig& cfg_;
  GraderModel model_;
  Cohort cohort_;
  Workflow wf_;
  std::mt19937_64 quality_rng_, prof_rng_, part_rng_, grade_rng_, acq_rng_;
  std::vector<PlannedPost> planned_;
  std::map<std::pair<StudentId, SkillId>, PostId> last_post_;
  std::map<PostId, double> quality_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t seq_ = 0;
};

}  // namespace

Dataset simulate_semester(const SimulationConfig& cfg) {
  cfg.validate();
  return Semester(cfg).run();
}

}  // namespace peergrade
