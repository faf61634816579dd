/* Compiled as C99: the public header and a few calls must work without C++. */
#include <math.h>
#include <stdio.h>

#include "fracevo/fracevo.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

static double decay(double t, void* data) {
  (void)data;
  return exp(-t);
}

int main(void) {
  fracevo_context* ctx = NULL;
  fracevo_eval_result r;
  fracevo_subordination_result s;
  double v = 0.0;

  EXPECT(fracevo_context_create(&ctx) == FRACEVO_OK);
  EXPECT(fracevo_ml_standard(ctx, 1.0, 2.0, &r) == FRACEVO_OK);
  EXPECT(fabs(r.value - exp(-2.0)) < 1e-15);
  EXPECT(fracevo_subordinate(ctx, decay, NULL, 0.0, 1.0, 3.0, &s) == FRACEVO_OK);
  EXPECT(s.value == exp(-3.0));
  EXPECT(fracevo_bs_price(105.0, 100.0, 0.0, 1.0, &v) == FRACEVO_OK);
  EXPECT(v == 5.0);
  EXPECT(fracevo_ml_density(ctx, 1.0, 1.0, &r) == FRACEVO_DIRAC_CASE);
  EXPECT(fracevo_last_error(ctx)[0] != '\0');
  fracevo_context_destroy(ctx);

  if (failures == 0) printf("C interface: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
