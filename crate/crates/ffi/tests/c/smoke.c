#include <stdio.h>
#include <string.h>

#include "sra_trace.h"

#define CHECK(c)                                                  \
  do {                                                            \
    if (!(c)) {                                                   \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #c);     \
      return 1;                                                   \
    }                                                             \
  } while (0)

int main(void) {
  SraCertificate *cert = NULL;
  CHECK(sra_coincide(3, 1, 0, NULL, 12, &cert) == SRA_STATUS_OK);
  CHECK(sra_certificate_equal(cert) == 1);
  CHECK(sra_certificate_verified(cert) == 1);
  char *json = NULL;
  CHECK(sra_certificate_json(cert, &json) == SRA_STATUS_OK);
  CHECK(strstr(json, "\"verdict\":\"equal\"") != NULL);
  sra_string_free(json);
  sra_certificate_free(cert);

  SraTrace *t = NULL;
  const char *params[] = {"1", "2"};
  CHECK(sra_trace_new(3, "2/7", -1, params, 2, &t) == SRA_STATUS_OK);
  CHECK(sra_trace_kappa(t) == -1);
  CHECK(sra_trace_eval(t, "S0", 0, &json) == SRA_STATUS_OK);
  CHECK(strstr(json, "\"coeffs\":[\"1\"") != NULL);
  sra_string_free(json);
  sra_trace_free(t);

  CHECK(sra_classify(3, "x", &json) == SRA_STATUS_USAGE);
  CHECK(json == NULL);
  CHECK(sra_last_error() != NULL);
  printf("ok %s\n", sra_version());
  return 0;
}
