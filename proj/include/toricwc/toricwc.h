/* C interface of the toric wall-crossing library. Reports are JSON strings. */
#ifndef TORICWC_H
#define TORICWC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TWC_API __declspec(dllexport)
#else
#define TWC_API __attribute__((visibility("default")))
#endif

typedef struct twc_problem twc_problem;

typedef enum {
    TWC_OK = 0,
    TWC_CHECK_FAILED = 1,     /* report produced, some check failed */
    TWC_ERR_PARSE = 2,        /* malformed JSON or unreadable file */
    TWC_ERR_VALIDATION = 3,   /* problem or options rejected */
    TWC_ERR_UNKNOWN_COMMAND = 4,
    TWC_ERR_MODULE = 5,       /* a module raised an error; see report "error" */
    TWC_ERR_ARGUMENT = 6      /* null pointer or similar misuse */
} twc_status;

TWC_API const char* twc_version(void);
TWC_API const char* twc_status_name(twc_status status);

/* Number of commands and their names, "all" last. */
TWC_API int twc_command_count(void);
TWC_API const char* twc_command_name(int index);

/* On failure *problem is NULL and *error_report (if error_report is non-NULL)
   receives a JSON error report to be released with twc_string_free. */
TWC_API twc_status twc_problem_load(const char* path, twc_problem** problem, char** error_report);
TWC_API twc_status twc_problem_parse(const char* json_text, const char* origin, twc_problem** problem,
                                     char** error_report);
TWC_API void twc_problem_free(twc_problem* problem);

/* Runs a command. options_json may be NULL or an object with keys
   tol, draws, y (array), seed, trunc_y, trunc_z ("p/q"), parallel.
   *report always receives a JSON report unless TWC_ERR_ARGUMENT is returned. */
TWC_API twc_status twc_run(const twc_problem* problem, const char* command, const char* options_json,
                           char** report);

/* Report for a failure outside twc_run, e.g. a malformed command line. */
TWC_API char* twc_error_report(const char* command, const char* code, const char* message);

TWC_API void twc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
