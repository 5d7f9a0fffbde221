"""Main CLI entry point for Borel-WKB."""

import math
import os
import re
from concurrent.futures import ThreadPoolExecutor

import click

from borelwkb import __version__
from borelwkb.utils.errors import ErrorHandler
from borelwkb.utils.logging import setup_logging

RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose output')
@click.option('--log-file', help='Log to file in addition to console')
@click.pass_context
def cli(ctx, verbose, log_file):
    """Borel-WKB - WKB coefficients, Borel sums, factorial series and error bounds."""
    ctx.ensure_object(dict)
    ctx.obj['verbose'] = verbose
    ctx.obj['log_file'] = log_file
    ctx.obj['error_handler'] = ErrorHandler(verbose=verbose)

    setup_logging(verbose=verbose, log_file=log_file)


def _complex_flag(values):
    """CLI complex values as the [re, im] pairs the run schema expects."""
    from borelwkb.config import parse_complex

    if not values:
        return None
    pairs = []
    for text in values:
        try:
            value = parse_complex(text)
        except ValueError:
            raise click.BadParameter(f"Not a complex number: {text}")
        pairs.append([value.real, value.imag])
    return pairs


def _scalar_flag(text, rational=True):
    if text is None:
        return None
    if rational and RATIONAL.match(text.strip()):
        return text.strip()
    pair = _complex_flag([text])[0]
    return pair[0] if pair[1] == 0 else pair


def _load_config(ctx, command, config_path, overrides):
    """Merge the YAML file (if any) with CLI flags and validate the result."""
    from borelwkb.config import ConfigManager

    manager = ConfigManager(verbose=ctx.obj['verbose'])
    base = manager.load_run_config(config_path) if config_path else None
    merged = manager.merge(base, dict(overrides, command=command))
    return manager.validate_or_raise(merged)


def _points(config, key, flag):
    from borelwkb.config import parse_complex_list
    from borelwkb.utils.errors import ValidationError

    if config.get(key) is None:
        raise ValidationError(f"No value for '{key}'", suggestions=[f"Pass {flag} or set '{key}' in the config file"])
    return parse_complex_list(config[key])


def _large_parameters(config):
    key = 'u' if config.get('u') is not None else 'nu'
    return _points(config, key, '--u')


def _bessel_instance(config, nu, z):
    from borelwkb.apps import BesselInstance
    from borelwkb.config import parse_kappa

    return BesselInstance(nu=nu, kappa=parse_kappa(config['kappa']), z=z, epsilon=config['epsilon'],
                          d=config.get('d'))


def _oscillator_instance(config, u, z):
    from borelwkb.apps import OscillatorInstance
    from borelwkb.config import parse_complex

    return OscillatorInstance(u=u, lam=parse_complex(config['lambda']), ell=config['ell'], z=z,
                              epsilon=config['epsilon'], d=config.get('d'))


def _emit(ctx, config, header, rows, payload, summary):
    """Write the result as CSV or JSON and print a one-line summary on stderr."""
    from borelwkb.utils.files import FileManager

    manager = FileManager(verbose=ctx.obj['verbose'])
    if config['format'] == 'json':
        text = manager.render_json(payload)
    else:
        text = manager.render_csv(header, rows)
    target = manager.emit(text, config.get('out'))
    if target:
        summary = f"{summary} -> {target}"
    click.echo(f"✓ {summary}", err=True)


def equation_options(func):
    """Options shared by every computing subcommand."""
    options = [
        click.option('--config', 'config_path', type=click.Path(), help='YAML run configuration'),
        click.option('--app', type=click.Choice(['bessel', 'oscillator']), help='Built-in equation'),
        click.option('--sign', type=click.Choice(['plus', 'minus']), help='WKB branch'),
        click.option('--kappa', help='Bessel order shift, e.g. 0, 1/2 or 0.3'),
        click.option('--lambda', 'lam', help='Oscillator parameter lambda'),
        click.option('--ell', type=int, help='Oscillator angular momentum'),
        click.option('--d', type=float, help='Domain constant d (default: 95% of the clearance)'),
        click.option('--epsilon', type=float, help='Excluded radius around singular points'),
        click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), help='Output format'),
        click.option('--out', type=click.Path(), help='Output file (default: stdout)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out):
    return {
        'app': app,
        'sign': sign,
        'kappa': _scalar_flag(kappa),
        'lambda': _scalar_flag(lam, rational=False),
        'ell': ell,
        'd': d,
        'epsilon': epsilon,
        'format': fmt,
        'out': out,
    }


@cli.command()
@equation_options
@click.option('--n', '-N', 'n_terms', type=int, help='Highest coefficient index')
@click.option('--var', type=click.Choice(['p', 'xi']), help='p: exact polynomials (Bessel); xi: values on the ray')
@click.option('--z', multiple=True, help='Anchor point of the ray (ray tables)')
@click.pass_context
def coeffs(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, n_terms, var, z):
    """Generate the WKB coefficients A_0..A_N."""
    try:
        from borelwkb.apps import bessel_equation, oscillator_table
        from borelwkb.coeffs import bessel_table, build_ray_table
        from borelwkb.config import parse_kappa
        from borelwkb.transform import compute_xi
        from borelwkb.utils.files import split_complex

        overrides = _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'N': n_terms, 'var': var, 'z': _complex_flag(z)})
        config = _load_config(ctx, 'coeffs', config_path, overrides)
        N = config['N']

        if config['app'] == 'bessel' and config['var'] == 'p':
            table = bessel_table(N, parse_kappa(config['kappa']), config['sign'])
            rows = []
            for n, poly in enumerate(table.entries):
                exact = poly.exact_rational
                for k, c in enumerate(poly.coeffs):
                    label = f"{exact[k][0]}/{exact[k][1]}" if exact else ''
                    rows.append([n, k] + split_complex(c) + [label])
            payload = {'app': 'bessel', 'var': 'p', **table.to_dict()}
            _emit(ctx, config, ['n', 'k', 'coeff_re', 'coeff_im', 'exact'], rows, payload,
                  f"A_0..A_{N} as polynomials in p")
            return

        anchor_z = _points(config, 'z', '--z')[0]
        if config['app'] == 'bessel':
            eq = bessel_equation(_bessel_instance(config, 1.0, anchor_z), config['sign'])
            table = build_ray_table(eq, compute_xi(eq.potential, anchor_z), N)
        else:
            table = oscillator_table(_oscillator_instance(config, 1.0, anchor_z), config['sign'], N)

        matrix = table.sample_matrix()
        header = ['s', 'xi_re', 'xi_im']
        for n in range(N + 1):
            header += [f"A{n}_re", f"A{n}_im"]
        rows = []
        for j, xi in enumerate(table.path.xi):
            row = [float(table.path.s[j])] + split_complex(xi)
            for n in range(N + 1):
                row += split_complex(matrix[n, j])
            rows.append(row)
        payload = {'app': config['app'], 'var': 'xi', 'xi': list(table.path.xi), 's': list(table.path.s),
                   **table.to_dict()}
        _emit(ctx, config, header, rows, payload,
              f"{table.backend.value} table A_0..A_{N} on {len(table.path)} ray samples")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Coefficient generation")


def _eta_row(config, u, z, sign, method, N):
    from borelwkb.apps import bessel_eta, oscillator_solution

    options = {'L': config.get('L'), 'M': config.get('M'), 'omega': config.get('omega')}
    if config['app'] == 'bessel':
        return bessel_eta(_bessel_instance(config, u, z), sign, method, N, **options)
    return oscillator_solution(_oscillator_instance(config, u, z), method, sign, N, **options).mu


@cli.command(name='sum')
@equation_options
@click.option('--z', multiple=True, help='Evaluation point (repeatable)')
@click.option('--u', multiple=True, help='Large parameter, nu for Bessel (repeatable)')
@click.option('--n', '-N', 'n_terms', type=int, help='Number of coefficients')
@click.option('--method', type=click.Choice(['asymptotic', 'borel', 'factorial']), help='Summation method')
@click.option('--L', 'pade_l', type=int, help='Pade numerator degree')
@click.option('--M', 'pade_m', type=int, help='Pade denominator degree')
@click.option('--omega', type=float, help='Factorial-series step')
@click.pass_context
def sum_command(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, z, u, n_terms, method,
                pade_l, pade_m, omega):
    """Evaluate the WKB correction eta by one of the summation methods."""
    try:
        overrides = _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'z': _complex_flag(z), 'u': _complex_flag(u), 'N': n_terms, 'method': method,
                          'L': pade_l, 'M': pade_m, 'omega': omega})
        config = _load_config(ctx, 'sum', config_path, overrides)
        from borelwkb.utils.files import split_complex

        rows, values = [], []
        for zv in _points(config, 'z', '--z'):
            for uv in _large_parameters(config):
                eta = _eta_row(config, uv, zv, config['sign'], config['method'], config['N'])
                values.append({'z': zv, 'u': uv, **eta.to_dict()})
                rows.append(split_complex(zv) + split_complex(uv)
                            + [config['sign'], eta.method.value, eta.N] + split_complex(eta.value) + [eta.error])
        header = ['z_re', 'z_im', 'u_re', 'u_im', 'sign', 'method', 'N', 'eta_re', 'eta_im', 'error']
        _emit(ctx, config, header, rows, {'app': config['app'], 'sign': config['sign'], 'values': values},
              f"{len(rows)} {config['method']} sums")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Summation")


def _factorial_setup(config, u, z, omega):
    """Expansion at z with the tail inputs attached when they can be certified."""
    from borelwkb.apps import (bessel_bound_context, bessel_equation, oscillator_bound_context,
                               oscillator_equation, oscillator_table)
    from borelwkb.coeffs import bessel_table
    from borelwkb.config import parse_kappa
    from borelwkb.factorial import TailInputs, default_omega, default_sigma, factorial_expansion

    sign, N = config['sign'], config['N']
    if config['app'] == 'bessel':
        inst = _bessel_instance(config, u, z)
        eq = bessel_equation(inst, sign)
        table = bessel_table(N, parse_kappa(config['kappa']), sign)
        point = inst.p
    else:
        inst = _oscillator_instance(config, u, z)
        eq = oscillator_equation(inst, sign)
        table = oscillator_table(inst, sign, N)
        point = 0.0
    omega = omega or default_omega(eq.d)
    expansion = factorial_expansion(table, point, omega, N, inst.xi, eq.d)

    r = math.pi / (4.0 * omega)
    if complex(u).real > omega and r < eq.d:
        if config['app'] == 'bessel':
            context = bessel_bound_context(inst, sign, r=r)
        else:
            context = oscillator_bound_context(inst, sign, r=r)
        sigma = config.get('sigma') or default_sigma(omega, u)
        expansion = expansion.with_tail(TailInputs(C=context.C, V=context.V_unit / sigma, sigma=sigma,
                                                   weight=context.weight))
    return expansion


@cli.command()
@equation_options
@click.option('--z', multiple=True, help='Evaluation point')
@click.option('--u', multiple=True, help='Large parameter, nu for Bessel')
@click.option('--n', '-N', 'n_terms', type=int, help='Number of factorial-series coefficients')
@click.option('--omega', type=float, help='Series step (default: 1.25 pi/(4d))')
@click.option('--sigma', type=float, help='Growth rate in the tail bound (default: min(omega, Re u)/2)')
@click.pass_context
def factorial(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, z, u, n_terms, omega, sigma):
    """Factorial-series coefficients B_n, partial sums and the certified tail bound."""
    try:
        from borelwkb.factorial import eval_factorial_series
        from borelwkb.utils.files import split_complex

        overrides = _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'z': _complex_flag(z), 'u': _complex_flag(u), 'N': n_terms, 'omega': omega,
                          'sigma': sigma})
        config = _load_config(ctx, 'factorial', config_path, overrides)
        zv = _points(config, 'z', '--z')[0]
        uv = _large_parameters(config)[0]

        expansion = _factorial_setup(config, uv, zv, config.get('omega'))
        rows = []
        for n in range(1, len(expansion) + 1):
            partial, tail = eval_factorial_series(expansion, uv, n)
            rows.append([n] + split_complex(partial) + [tail])
        value, tail = eval_factorial_series(expansion, uv)
        payload = {'app': config['app'], 'u': uv, **expansion.to_dict(), 'value': value, 'tail_bound': tail}
        header = ['N', 'partial_sum_re', 'partial_sum_im', 'tail_bound']
        _emit(ctx, config, header, rows, payload,
              f"Factorial series with omega={expansion.omega:.6g}: {value:.12g} (tail bound {tail:.3e})")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Factorial series")


@cli.command()
@equation_options
@click.option('--z', multiple=True, help='Evaluation point')
@click.option('--u', multiple=True, help='Large parameter, nu for Bessel (repeatable)')
@click.option('--n-max', type=int, help='Largest truncation order')
@click.option('--r', type=float, help='Borel radius r < d (default: d/2)')
@click.option('--sigma', type=float, help='Growth rate sigma < Re u (default: Re u/2)')
@click.pass_context
def bounds(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, z, u, n_max, r, sigma):
    """Remainder bounds of the truncated WKB series, with the true remainder where known."""
    try:
        from borelwkb.apps import asymptotic_sum, bessel_bound_context, bessel_true_eta, oscillator_bound_context
        from borelwkb.coeffs import bessel_table
        from borelwkb.config import parse_kappa
        from borelwkb.utils.errors import BoundViolated
        from borelwkb.utils.files import split_complex

        overrides = _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'z': _complex_flag(z), 'u': _complex_flag(u), 'n_max': n_max, 'r': r,
                          'sigma': sigma})
        config = _load_config(ctx, 'bounds', config_path, overrides)
        sign, n_max = config['sign'], config['n_max']

        rows, reports, breaches = [], [], 0
        for zv in _points(config, 'z', '--z'):
            large = _large_parameters(config)
            if config['app'] == 'bessel':
                context = bessel_bound_context(_bessel_instance(config, large[0], zv), sign, r=config.get('r'))
                table = bessel_table(n_max, parse_kappa(config['kappa']), sign)
            else:
                context = oscillator_bound_context(_oscillator_instance(config, large[0], zv), sign,
                                                   r=config.get('r'))
                table = None
            for uv in large:
                true_eta = None
                if table is not None:
                    inst = _bessel_instance(config, uv, zv)
                    true_eta = bessel_true_eta(inst, sign)
                for N in range(1, n_max + 1):
                    true_rem = None
                    if true_eta is not None:
                        true_rem = abs(true_eta - asymptotic_sum(table, inst.p, uv, N))
                    report = context.report(uv, N, config.get('sigma'), true_remainder=true_rem)
                    if true_rem is not None and true_rem > report.bound:
                        breaches += 1
                    reports.append(report)
                    rows.append(split_complex(zv) + split_complex(uv)
                                + [N, report.sigma, report.r, report.V, report.C, report.C_upper,
                                   report.bound, true_rem])
        header = ['z_re', 'z_im', 'u_re', 'u_im', 'N', 'sigma', 'r', 'V', 'C', 'C_upper', 'bound', 'true_rem']
        _emit(ctx, config, header, rows, {'app': config['app'], 'reports': reports},
              f"{len(rows)} remainder bounds, {breaches} exceeded")
        if breaches:
            raise BoundViolated(f"{breaches} true remainders exceed their bound")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Remainder bounds")


@cli.command(name='bessel-compare')
@equation_options
@click.option('--nu', multiple=True, help='Order nu (repeatable)')
@click.option('--z', multiple=True, help='Point z, argument nu z (repeatable)')
@click.option('--n', '-N', 'n_terms', type=int, help='Truncation order of the WKB series')
@click.pass_context
def bessel_compare(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, nu, z, n_terms):
    """Compare WKB Hankel functions (H1 for plus, H2 for minus) with the reference values."""
    try:
        from borelwkb.apps import bessel_bound_context, compare_hankel
        from borelwkb.config import worker_count
        from borelwkb.utils.errors import BoundViolated
        from borelwkb.utils.files import split_complex

        overrides = _common_overrides(app, sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'nu': _complex_flag(nu), 'z': _complex_flag(z), 'N': n_terms})
        config = _load_config(ctx, 'bessel-compare', config_path, overrides)
        branch = 'H1' if config['sign'] == 'plus' else 'H2'
        orders = _points(config, 'nu', '--nu')
        points = _points(config, 'z', '--z')

        contexts = {zv: bessel_bound_context(_bessel_instance(config, orders[0], zv), config['sign'])
                    for zv in points}
        jobs = [(nv, zv) for nv in orders for zv in points]

        def run(job):
            nv, zv = job
            return compare_hankel(_bessel_instance(config, nv, zv), config['N'], branch, contexts[zv])

        with ThreadPoolExecutor(max_workers=worker_count()) as pool:
            results = list(pool.map(run, jobs))

        rows = [split_complex(c.nu) + split_complex(c.z) + [c.N] + split_complex(c.wkb)
                + split_complex(c.oracle) + [c.rel_err, c.bound] for c in results]
        header = ['nu_re', 'nu_im', 'z_re', 'z_im', 'N', 'wkb_re', 'wkb_im', 'oracle_re', 'oracle_im', 'rel_err',
                  'thm2_bound']
        breaches = sum(not c.within_bound for c in results)
        _emit(ctx, config, header, rows, {'branch': branch, 'comparisons': results},
              f"{len(results)} {branch} comparisons, {breaches} outside the bound")
        if breaches:
            raise BoundViolated(f"{breaches} relative errors exceed their bound",
                                suggestions=["Lower N towards the optimal truncation"])

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Bessel comparison")


@cli.command()
@equation_options
@click.option('--z', multiple=True, help='Point z (repeatable)')
@click.option('--u', multiple=True, help='Large parameter u (repeatable)')
@click.option('--n', '-N', 'n_terms', type=int, help='Number of coefficients')
@click.option('--method', type=click.Choice(['asymptotic', 'borel', 'factorial']), help='Summation method')
@click.pass_context
def oscillator(ctx, config_path, app, sign, kappa, lam, ell, d, epsilon, fmt, out, z, u, n_terms, method):
    """Solutions of the rotating harmonic oscillator equation and their ODE residuals."""
    try:
        from borelwkb.apps import oscillator_residual, oscillator_solution, oscillator_table
        from borelwkb.utils.files import split_complex

        overrides = _common_overrides('oscillator', sign, kappa, lam, ell, d, epsilon, fmt, out)
        overrides.update({'z': _complex_flag(z), 'u': _complex_flag(u), 'N': n_terms, 'method': method})
        config = _load_config(ctx, 'oscillator', config_path, overrides)
        sign, N = config['sign'], config['N']

        rows, values = [], []
        for zv in _points(config, 'z', '--z'):
            for uv in _large_parameters(config):
                inst = _oscillator_instance(config, uv, zv)
                table = oscillator_table(inst, sign, N)
                solution = oscillator_solution(inst, config['method'], sign, N, table=table)
                residual = oscillator_residual(inst, sign, N, table=table)
                values.append({'z': zv, 'u': uv, **solution.to_dict(), 'residual': residual})
                rows.append(split_complex(zv)[:1] + split_complex(uv)[:1] + [sign]
                            + split_complex(solution.w) + split_complex(solution.mu.value) + [residual])
        header = ['z', 'u', 'sign', 'w_re', 'w_im', 'mu_re', 'mu_im', 'residual']
        _emit(ctx, config, header, rows, {'app': 'oscillator', 'values': values},
              f"{len(rows)} oscillator solutions")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Oscillator solutions")


@cli.group(name='config', context_settings={'help_option_names': ['-h', '--help']})
@click.pass_context
def config_group(ctx):
    """Manage run configuration files."""
    pass


@config_group.command(name='validate')
@click.argument('path', type=click.Path())
@click.pass_context
def config_validate(ctx, path):
    """Validate a run configuration file."""
    try:
        from borelwkb.config import ConfigManager, ConfigValidationError
        from borelwkb.utils.errors import format_validation_errors

        manager = ConfigManager(verbose=ctx.obj['verbose'])
        try:
            manager.load_run_config(path)
        except ConfigValidationError as e:
            click.echo(format_validation_errors(e.errors), err=True)
            raise
        click.echo(f"✓ {path} is a valid run configuration")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Configuration validation")


@config_group.command(name='init')
@click.argument('path', type=click.Path())
@click.option('--force', is_flag=True, help='Overwrite an existing file')
@click.pass_context
def config_init(ctx, path, force):
    """Write a commented default run configuration."""
    try:
        from borelwkb.config import ConfigManager
        from borelwkb.utils.errors import ConfigurationError

        if os.path.exists(path) and not force:
            raise ConfigurationError(f"{path} already exists", suggestions=["Pass --force to overwrite it"])
        target = ConfigManager(verbose=ctx.obj['verbose']).write_default_config(path)
        click.echo(f"✓ Default run configuration written to {target}")

    except Exception as e:
        ctx.obj['error_handler'].exit_with_error(e, "Configuration initialization")


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == '__main__':
    main()
