#include <stdio.h>
#include <string.h>
#include "orbithull.h"

int main(void) {
    OhProblem *p = NULL;
    if (oh_problem_new("{\"cartan\": [[2,-1],[-1,2]], \"mu\": [3,2]}", &p) != OH_STATUS_OK) return 10;
    size_t count = 0;
    bool complete = false;
    if (oh_face_count(p, 3, &count, &complete) != OH_STATUS_OK) return 11;
    if (count != 14 || !complete) return 12;
    char *prod = NULL;
    if (oh_renner_multiply(p, "{\"unit\":\"1\"}", "{\"unit\":\"1\"}", &prod) != OH_STATUS_OK) return 13;
    if (strstr(prod, "\"unit\":\"\"") == NULL) return 14;
    oh_string_free(prod);
    if (oh_oracle(p) != OH_STATUS_OK) return 15;
    oh_problem_free(p);
    if (oh_problem_new("{\"cartan\": [[2,1],[1,2]]}", &p) != OH_STATUS_VALIDATION_ERROR) return 16;
    if (p != NULL || oh_last_error() == NULL) return 17;
    printf("%zu faces\n", count);
    return 0;
}
