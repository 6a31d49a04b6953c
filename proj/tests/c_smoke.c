/* Compiles the public header as C and drives a tiny experiment through it. */

#include <stdio.h>
#include <string.h>

#include "seeood/seeood.h"

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s failed (%s)\n", __FILE__, __LINE__, \
              #cond, seeood_last_error());                        \
      return 1;                                                   \
    }                                                             \
  } while (0)

int main(void) {
  const char* text =
      "[method]\nname = wood\n[train]\niterations = 5\nn_d = 1\n"
      "discriminator_arch = 2 8 3\n[eval]\nreplications = 1\ngrid_resolution = 4\n";
  seeood_config* config = NULL;
  seeood_config* bad = NULL;
  seeood_report* report = NULL;
  double p[3] = {0.5, 0.25, 0.25};
  double score = 0.0;
  size_t argmin = 7;
  size_t reps = 0;
  double mean = 0.0;
  double mad = 0.0;

  EXPECT(seeood_config_parse(text, NULL, &config) == SEEOOD_OK);
  EXPECT(seeood_experiment_run(config, NULL, &report) == SEEOOD_OK);
  EXPECT(seeood_report_replications(report, &reps) == SEEOOD_OK && reps == 1);
  EXPECT(seeood_report_tpr(report, 0, &mean, &mad) == SEEOOD_OK && mad == 0.0);
  EXPECT(seeood_wasserstein_score(p, 3, NULL, &score, &argmin) == SEEOOD_OK);
  EXPECT(score == 0.5 && argmin == 0);
  EXPECT(seeood_config_parse("[eval]\nreplications = 0\n", NULL, &bad) == SEEOOD_ERR_PARSE);
  EXPECT(bad == NULL && strlen(seeood_last_error()) > 0);
  EXPECT(seeood_report_replications(NULL, &reps) == SEEOOD_ERR_INVALID_ARGUMENT);

  seeood_report_free(report);
  seeood_config_free(config);
  puts("c api smoke: ok");
  return 0;
}
