"""
Acceptance scenarios for levymart
Runs closed-form desk checks and Monte Carlo confirmations through the tool layer
"""
import sys
import math
import argparse
import html
from pathlib import Path
from datetime import datetime
from termcolor import colored

# Add project root to path
project_root = Path(__file__).resolve().parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from levymart.catalog import CATALOG
from levymart.tools import (
    apply_generator,
    classify_function,
    compute_moments,
    describe_process,
    run_mtg_test,
    simulate_paths,
    solve_exponential,
    solve_funceq,
)

html_mode = False
html_output = []
n_paths = 100000


def print_section(title, char="=", html_mode=False):
    """Print a formatted section header."""
    if html_mode:
        html_output.append(f'<h2 style="color: #0080ff; border-bottom: 2px solid #0080ff; padding: 10px 0;">{html.escape(title)}</h2>')
    else:
        print(colored(f"\n{char * 80}", "cyan"))
        print(colored(f"{title}", "cyan", attrs=["bold"]))
        print(colored(f"{char * 80}\n", "cyan"))


def print_checks(checks, execution_time, html_mode=False):
    """Print the individual checks of a scenario."""
    if html_mode:
        html_output.append('<ul style="list-style: none; padding: 0;">')
        for label, ok, detail in checks:
            color = "#4caf50" if ok else "#f44336"
            mark = "✓" if ok else "✗"
            html_output.append(
                f'<li style="padding: 8px; margin: 5px 0; background: #f0f0f0; border-radius: 3px;">'
                f'<span style="color: {color};">{mark}</span> {html.escape(label)} '
                f'<code>{html.escape(detail)}</code></li>'
            )
        html_output.append('</ul>')
        html_output.append(f'<div style="margin: 10px 0; color: #ff9800;">⏱ Execution Time: {execution_time:.2f} seconds</div>')
    else:
        for label, ok, detail in checks:
            mark = colored("✓", "green") if ok else colored("✗", "red")
            print(f"  {mark} {label}  " + colored(detail, "yellow"))
        print(colored(f"\n  Execution Time: {execution_time:.2f} seconds", "yellow"))


def close(value, target, tol):
    return value is not None and abs(value - target) <= tol


def require(result):
    if not result.get('success'):
        raise RuntimeError(f"{result.get('error_kind')}: {result.get('error')}")
    return result


# ---------------------------------------------------------------------------
# Scenarios: each returns a list of (label, ok, detail)
# ---------------------------------------------------------------------------

def scenario_exponents():
    gamma = require(describe_process('gamma', xi_values=[1.0]))
    psi = gamma['exponent'][0]
    eta = require(apply_generator('gamma', lam=0.5))['exponential']['eta']
    pareto = require(describe_process('pareto-jumps'))
    return [
        ("gamma psi(1) = log(1 - i)", close(psi['re'], 0.5 * math.log(2.0), 1e-8) and close(psi['im'], -math.pi / 4, 1e-8),
         f"{psi['re']:.10f} {psi['im']:+.10f}i"),
        ("gamma eta(0.5) = ln 2", close(eta, math.log(2.0), 1e-8), f"{eta:.12f}"),
        ("power tail |y|^-2.5: only the first moment is finite", pareto['finite_moment_orders'] == [1],
         str(pareto['finite_moment_orders'])),
    ]


def scenario_generator_semigroup():
    checks = []
    for name in CATALOG:
        if name == 'pareto-jumps':
            continue
        matches = all(
            require(apply_generator(name, poly=[0.0] * n + [1.0]))['polynomial']['t_linear_matches']
            for n in range(1, 7)
        )
        checks.append((f"{name}: d/dt E(x + X_t)^n at 0 equals A x^n, n <= 6", matches, ""))
    return checks


def scenario_degree_rigidity():
    checks = []
    for name in ('brownian', 'cpoisson-two-point', 'cpoisson-gauss-jumps', 'bilateral-gamma', 'tempered-stable'):
        quadratic = require(classify_function(name, poly=[1.0, -2.0, 0.5]))['verdict']
        higher = [require(classify_function(name, poly=[0.0] * n + [1.0]))['verdict'] for n in range(3, 7)]
        ok = quadratic == 'martingale-function' and all(v == 'not-martingale-function' for v in higher)
        checks.append((f"{name}: degree <= 2 only", ok, quadratic))
    brownian = require(classify_function('brownian', poly=[0.0, 0.0, 5.0]))
    checks.append(("brownian 5x^2 has alpha = 5", close(brownian['alpha'], 5.0, 1e-12), str(brownian['alpha'])))
    return checks


def scenario_brownian_moments():
    moments = require(compute_moments('brownian', order=4))
    fourth = moments['moment_polynomials'][4]
    paths = require(simulate_paths('brownian', [1.0], n_paths, seed=42))
    return [
        ("E B_t^4 = 3 t^2", len(fourth) == 3 and close(fourth[2], 3.0, 1e-12), str(fourth)),
        ("batch variance at t = 1 within 1 +- 0.02", close(paths['variance'][1], 1.0, 0.02), f"{paths['variance'][1]:.5f}"),
    ]


def scenario_additive_test():
    square = require(run_mtg_test('brownian', 'square', seed=1, n_paths=n_paths))['report']
    cube = require(run_mtg_test('brownian', 'cube', seed=2, n_paths=n_paths))['report']
    instrument = next(p for p in cube['instruments'] if p['instrument'] == 'x')
    return [
        ("x^2 on Brownian motion: fail to reject", square['verdict'] == 'fail-to-reject', f"p = {square['adjusted_p_value']:.4g}"),
        ("x^3 on Brownian motion: reject", cube['verdict'] == 'reject', f"p = {cube['adjusted_p_value']:.4g}"),
        ("phi = x statistic within 4 SE of 0.75", abs(instrument['statistic'] - 0.75) <= 4 * instrument['std_error'],
         f"{instrument['statistic']:.4f} +- {instrument['std_error']:.4f}"),
    ]


def scenario_exponential_martingales():
    brownian = require(solve_exponential('brownian', 0.5))
    cosh = require(run_mtg_test('brownian', 'cosh', seed=3, mode='mult', n_paths=n_paths))['report']
    mixed = require(run_mtg_test('brownian', 'expmix:1,1,1,2', seed=4, mode='mult', n_paths=n_paths))['report']
    gamma = require(solve_exponential('gamma', math.log(2.0), build=(1.0, 0.0)))
    g = gamma['martingale']['g']
    return [
        ("brownian eta = 1/2 at lambda = -1, +1", len(brownian['roots']) == 2
         and close(brownian['roots'][0], -1.0, 1e-8) and close(brownian['roots'][1], 1.0, 1e-8)
         and max(brownian['residuals']) <= 1e-10, str(brownian['roots'])),
        ("cosh passes the multiplicative test", cosh['verdict'] == 'fail-to-reject', f"p = {cosh['adjusted_p_value']:.4g}"),
        ("e^x + e^2x is rejected", mixed['verdict'] == 'reject', f"p = {mixed['adjusted_p_value']:.4g}"),
        ("gamma: single root 1/2 for alpha = ln 2", len(gamma['roots']) == 1 and close(gamma['roots'][0], 0.5, 1e-8),
         str(gamma['roots'])),
        ("gamma: g = e^{x/2} with normalizer 2^t", close(g['lam1'], 0.5, 1e-8) and g['b'] == 0.0,
         gamma['martingale']['normalizer']),
    ]


def scenario_frechet():
    solved = require(solve_funceq('solve', [0.0, -6.0, 3.0], 2.0))
    diff = require(solve_funceq('diff', [0.0, 8.0, -6.0, 1.0], 2.0))
    return [
        ("3x(x - 2) with y = 2 gives x(x - 2)(x - 4) / 2", all(close(a, b, 1e-12) for a, b in zip(solved['q'], [0.0, 4.0, -3.0, 0.5])),
         str(solved['q'])),
        ("round trip and degree", solved['round_trip'] and solved['degree'] == 3, str(solved['degree'])),
        ("Delta_2 x(x - 2)(x - 4) = 6x(x - 2)", all(close(a, b, 1e-12) for a, b in zip(diff['difference'], [0.0, -12.0, 6.0])),
         str(diff['difference'])),
    ]


def scenario_heavy_tail():
    exact = require(compute_moments('pareto-jumps', order=4))
    paths = require(simulate_paths('pareto-jumps', [1.0], min(n_paths, 20000), seed=21, tail_order=4))
    return [
        ("first infinite moment order is 2", exact['first_infinite_order'] == 2, str(exact['first_infinite_order'])),
        ("simulated fourth moment blows up", paths['tail_diagnostic']['blowup'], f"ratio {paths['tail_diagnostic']['ratio']:.3f}"),
    ]


SCENARIOS = [
    {"num": 1, "run": scenario_exponents, "description": "Exponents by quadrature against closed forms"},
    {"num": 2, "run": scenario_generator_semigroup, "description": "Generator-semigroup consistency on the catalog"},
    {"num": 3, "run": scenario_degree_rigidity, "description": "Only polynomials of degree <= 2 are martingale functions"},
    {"num": 4, "run": scenario_brownian_moments, "description": "Brownian moments, exact and simulated"},
    {"num": 5, "run": scenario_additive_test, "description": "Additive Monte Carlo test on Brownian motion"},
    {"num": 6, "run": scenario_exponential_martingales, "description": "Exponential martingales, two-sided and one-sided"},
    {"num": 7, "run": scenario_frechet, "description": "Fréchet difference equation"},
    {"num": 8, "run": scenario_heavy_tail, "description": "Moment finiteness against the heavy-tail diagnostic"},
]


def run_scenario(scenario, html_mode=False):
    """Run a single scenario."""
    print_section(f"Scenario {scenario['num']}", "=", html_mode)
    if html_mode:
        html_output.append(f'<p style="color: #666; margin: 10px 0;"><em>{html.escape(scenario["description"])}</em></p>')
    else:
        print(colored(f"Description: {scenario['description']}\n", "white"))

    start_time = datetime.now()
    try:
        checks = scenario["run"]()
    except Exception as e:
        if html_mode:
            html_output.append(f'<div style="background: #ffebee; padding: 15px; margin: 10px 0; border-left: 4px solid #f44336;"><strong style="color: #c62828;">❌ Error:</strong> {html.escape(str(e))}</div>')
        else:
            print(colored(f"\n❌ Error: {str(e)}", "red"))
        return False
    execution_time = (datetime.now() - start_time).total_seconds()
    print_checks(checks, execution_time, html_mode)
    return all(ok for _, ok, _ in checks)


def generate_html(results, total, passed, failed):
    """Generate HTML output."""
    rows = ''.join(
        f'<tr><td>Scenario {num}</td><td class="{"status-pass" if ok else "status-fail"}">{"✓ PASS" if ok else "✗ FAIL"}</td></tr>'
        for num, ok in results
    )
    return f"""<!DOCTYPE html>
<html>
<head>
    <title>levymart Acceptance Results</title>
    <meta charset="UTF-8">
    <style>
        body {{ font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif; margin: 20px; background: #f5f5f5; }}
        .container {{ max-width: 1200px; margin: 0 auto; background: white; padding: 30px; border-radius: 10px; box-shadow: 0 2px 10px rgba(0,0,0,0.1); }}
        h1 {{ color: #1976d2; border-bottom: 3px solid #1976d2; padding-bottom: 10px; }}
        .summary {{ background: #e3f2fd; padding: 20px; margin: 20px 0; border-radius: 5px; }}
        .summary-item {{ margin: 10px 0; font-size: 18px; }}
        .passed {{ color: #4caf50; font-weight: bold; }}
        .failed {{ color: #f44336; font-weight: bold; }}
        .total {{ color: #2196f3; font-weight: bold; }}
        .results-table {{ width: 100%; border-collapse: collapse; margin: 20px 0; }}
        .results-table th {{ background: #2196f3; color: white; padding: 12px; text-align: left; }}
        .results-table td {{ padding: 10px; border-bottom: 1px solid #ddd; }}
        .status-pass {{ color: #4caf50; font-weight: bold; }}
        .status-fail {{ color: #f44336; font-weight: bold; }}
        code {{ background: #f5f5f5; padding: 2px 6px; border-radius: 3px; font-family: 'Courier New', monospace; }}
    </style>
</head>
<body>
    <div class="container">
        <h1>levymart Acceptance Scenarios</h1>
        <div class="summary">
            <div class="summary-item"><span class="total">Total Scenarios:</span> {total}</div>
            <div class="summary-item"><span class="passed">Passed:</span> {passed}</div>
            <div class="summary-item"><span class="failed">Failed:</span> {failed}</div>
        </div>
        <hr>
        {''.join(html_output)}
        <hr>
        <h2 style="color: #1976d2;">Summary</h2>
        <table class="results-table">
            <thead><tr><th>Scenario</th><th>Status</th></tr></thead>
            <tbody>{rows}</tbody>
        </table>
        <p style="color: #666; text-align: center; margin-top: 30px;">
            Generated at: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}
        </p>
    </div>
</body>
</html>"""


def main():
    """Run all acceptance scenarios."""
    parser = argparse.ArgumentParser(description='Run levymart acceptance scenarios')
    parser.add_argument('--html', action='store_true', help='Output results as HTML file')
    parser.add_argument('--output', type=str, default='test_results.html', help='HTML output filename')
    parser.add_argument('--quick', action='store_true', help='Use 20000 Monte Carlo paths instead of 100000')
    args = parser.parse_args()

    global html_mode, n_paths
    html_mode = args.html
    if args.quick:
        n_paths = 20000

    if not html_mode:
        print(colored("\n" + "=" * 80, "cyan", attrs=["bold"]))
        print(colored("levymart Acceptance Scenarios", "cyan", attrs=["bold"]))
        print(colored("=" * 80 + "\n", "cyan", attrs=["bold"]))

    results = []
    for scenario in SCENARIOS:
        results.append((scenario["num"], run_scenario(scenario, html_mode)))

    passed = sum(1 for _, success in results if success)
    total = len(results)
    failed = total - passed

    if html_mode:
        output_file = Path(args.output)
        output_file.write_text(generate_html(results, total, passed, failed), encoding='utf-8')
        print(f"✅ HTML report generated: {output_file.absolute()}")
    else:
        print_section("Test Summary", "=")
        print(colored(f"Total Scenarios: {total}", "cyan"))
        print(colored(f"Passed: {passed}", "green"))
        print(colored(f"Failed: {failed}", "red" if failed > 0 else "green"))

        print("\nDetailed Results:")
        for num, success in results:
            status = colored("✓ PASS", "green") if success else colored("✗ FAIL", "red")
            print(f"  Scenario {num}: {status}")

    sys.exit(0 if failed == 0 else 1)


if __name__ == "__main__":
    main()
