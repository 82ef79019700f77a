# pass/fail lines collected by test_acceptance, printed in the terminal summary
RESULTS = []
