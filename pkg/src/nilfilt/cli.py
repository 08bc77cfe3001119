"""Command-line front end: a thin client over the HTTP service.

Every command builds a JSON request, posts it to the service, and renders
the JSON response.  By default the service app is mounted in-process (no
server needed); ``--server URL`` or ``NILFILT_SERVER`` routes the same
requests to a running instance instead.

Exit codes: 0 success, 1 unknown command, 2 size guard exceeded,
3 validation failure, 4 I/O failure.  Verification failures exit 1.
"""

from __future__ import annotations

import json
import os
import sys

import click
import httpx


class ClientError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


class ServiceClient:
    """POSTs requests either in-process (ASGI) or to a remote server."""

    def __init__(self, server: str | None = None):
        if server:
            self._client = httpx.Client(base_url=server.rstrip("/"), timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import app

            self._client = TestClient(app, raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise ClientError(4, f"cannot reach service: {exc}") from exc
        if resp.status_code == 200:
            return resp.json()
        raise ClientError(*_map_error(resp))


def _map_error(resp) -> tuple[int, str]:
    try:
        detail = resp.json().get("detail")
    except Exception:
        detail = None
    if isinstance(detail, dict):
        code = detail.get("code")
        message = detail.get("message", "")
        if code == "guard-exceeded":
            return 2, message
        return 3, message
    if resp.status_code == 404:
        return 1, "unknown endpoint"
    if resp.status_code == 422:
        return 3, json.dumps(detail)
    return 4, f"service error {resp.status_code}: {resp.text[:200]}"


def _group_payload(value: str) -> dict:
    """--group accepts a catalog/builtin spec, or @file / *.json for files."""
    if value.startswith("@") or value.endswith(".json"):
        path = value[1:] if value.startswith("@") else value
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ClientError(4, f"cannot read group file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ClientError(3, f"group file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ClientError(3, "group file must be a JSON object")
        return {"file": data}
    return {"spec": value}


def _parse_q(_ctx, _param, value: str):
    if value == "inf":
        return "inf"
    try:
        q = int(value)
    except ValueError:
        raise click.BadParameter("q must be an integer >= 2 or 'inf'")
    if q < 2:
        raise click.BadParameter("q must be >= 2")
    return q


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("NILFILT_JOBS", "1")))
    except ValueError:
        return 1


def _emit_json(data: dict) -> None:
    click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))


def _emit_value(data: dict, fmt: str) -> None:
    if fmt == "json":
        _emit_json(data)
    elif fmt == "tsv":
        click.echo(
            "\t".join(
                str(data[k]) for k in ("group", "q", "variant", "n", "kind", "value")
            )
        )
    else:
        click.echo(
            f"{data['kind']}_{data['n']}(q={data['q']},{data['variant']}) "
            f"of {data['group']} = {data['value']}"
        )


def _subgroup_str(sub: dict) -> str:
    return "{" + ",".join(str(e) for e in sub["elements"]) + "}"


group_option = click.option(
    "--group", "-g", "group_spec", required=True,
    help="catalog name (A5, Q8, ...), family spec (dihedral:12), or @file.json",
)
q_option = click.option(
    "--q", "q", default="2", callback=_parse_q, show_default=True,
    help="nilpotency level (integer >= 2 or 'inf')",
)
p_option = click.option(
    "--p", "p", type=int, default=None,
    help="prime selecting the p-descending series variant",
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["table", "json", "tsv"]),
    default="table", show_default=True,
)
jobs_option = click.option(
    "--jobs", type=int, default=_default_jobs, show_default="NILFILT_JOBS or 1",
    help="worker processes for enumeration",
)


@click.group(name="nilfilt")
@click.option(
    "--server", envvar="NILFILT_SERVER", default=None,
    help="base URL of a running service (default: run in-process)",
)
@click.pass_context
def cli(ctx: click.Context, server: str | None) -> None:
    """Exact invariants of nilpotent filtrations of classifying spaces."""
    ctx.obj = ServiceClient(server)


@cli.command("group")
@group_option
@format_option
@click.pass_obj
def group_cmd(client: ServiceClient, group_spec: str, fmt: str) -> None:
    """Validate a group and print basic structure data."""
    data = client.post("/v1/group", {"group": _group_payload(group_spec)})
    if fmt == "json":
        _emit_json(data)
    else:
        for key in (
            "name", "order", "abelian", "center_order", "nilpotency_class",
            "stabilization_exponent", "conjugacy_classes",
        ):
            click.echo(f"{key}\t{data[key]}" if fmt == "tsv" else f"{key}: {data[key]}")


@cli.command("lambda")
@group_option
@q_option
@p_option
@click.option("--n", type=int, required=True, help="tuple length")
@jobs_option
@format_option
@click.pass_obj
def lambda_cmd(client, group_spec, q, p, n, jobs, fmt) -> None:
    """Count admissible n-tuples."""
    data = client.post(
        "/v1/lambda",
        {"group": _group_payload(group_spec), "q": q, "p": p, "n": n, "jobs": jobs},
    )
    _emit_value(data, fmt)


@cli.command("mu")
@group_option
@q_option
@p_option
@click.option("--k", type=int, required=True, help="tuple length")
@jobs_option
@format_option
@click.pass_obj
def mu_cmd(client, group_spec, q, p, k, jobs, fmt) -> None:
    """Count identity-free admissible k-tuples."""
    data = client.post(
        "/v1/mu",
        {"group": _group_payload(group_spec), "q": q, "p": p, "n": k, "jobs": jobs},
    )
    _emit_value(data, fmt)


@cli.command("scount")
@group_option
@q_option
@p_option
@click.option("--n", type=int, required=True, help="tuple length")
@click.option("--j", type=int, required=True, help="minimum number of identity slots")
@jobs_option
@format_option
@click.pass_obj
def scount_cmd(client, group_spec, q, p, n, j, jobs, fmt) -> None:
    """Count admissible n-tuples with at least j identity coordinates."""
    data = client.post(
        "/v1/scount",
        {
            "group": _group_payload(group_spec),
            "q": q, "p": p, "n": n, "j": j, "jobs": jobs,
        },
    )
    _emit_value(data, fmt)


@cli.command("stab")
@group_option
@format_option
@click.pass_obj
def stab_cmd(client, group_spec, fmt) -> None:
    """Stabilization exponent of the filtration."""
    data = client.post("/v1/stab", {"group": _group_payload(group_spec)})
    if fmt == "json":
        _emit_json(data)
    elif fmt == "tsv":
        click.echo(f"{data['group']}\t{data['exponent']}")
    else:
        click.echo(f"stabilization exponent of {data['group']} = {data['exponent']}")


@cli.command("reporbits")
@group_option
@q_option
@p_option
@click.option("--n", type=int, required=True, help="tuple length")
@format_option
@click.pass_obj
def reporbits_cmd(client, group_spec, q, p, n, fmt) -> None:
    """Count conjugation orbits of admissible n-tuples."""
    data = client.post(
        "/v1/reporbits",
        {"group": _group_payload(group_spec), "q": q, "p": p, "n": n},
    )
    _emit_value(data, fmt)


@cli.command("family")
@group_option
@q_option
@format_option
@click.pass_obj
def family_cmd(client, group_spec, q, fmt) -> None:
    """All subgroups of class < q (guarded to |G| <= 256)."""
    data = client.post("/v1/family", {"group": _group_payload(group_spec), "q": q})
    if fmt == "json":
        _emit_json(data)
        return
    rows = [("member", _subgroup_str(m), m["order"]) for m in data["members"]]
    rows += [("maximal", _subgroup_str(m), m["order"]) for m in data["maximal"]]
    for kind, elems, order in rows:
        click.echo(f"{kind}\t{order}\t{elems}")


@cli.command("poset")
@group_option
@q_option
@format_option
@click.pass_obj
def poset_cmd(client, group_spec, q, fmt) -> None:
    """Maximal members and intersections as a graph of groups."""
    data = client.post("/v1/poset", {"group": _group_payload(group_spec), "q": q})
    if fmt == "json":
        _emit_json(data)
        return
    vertices = data["vertices"]
    if fmt == "table":
        click.echo(f"vertices: {len(vertices)}  edges: {len(data['edges'])}  "
                   f"is_tree: {data['is_tree']}")
    for u, v in data["edges"]:
        click.echo(f"{_subgroup_str(vertices[u])}\t{_subgroup_str(vertices[v])}")


@cli.command("tc")
@group_option
@format_option
@click.pass_obj
def tc_cmd(client, group_spec, fmt) -> None:
    """Transitively-commutative test and invariants."""
    data = client.post("/v1/tc", {"group": _group_payload(group_spec)})
    if fmt == "json":
        _emit_json(data)
        return
    if not data["is_tc"]:
        click.echo(
            f"{data['group']}: not TC; witness g={data['witness_label']} "
            f"(id {data['witness']}) has a nonabelian centralizer"
        )
        return
    click.echo(f"{data['group']}: TC with k={data['k']} covering centralizers")
    click.echo(f"free rank: {data['free_rank']}  chi: {data['chi']}")
    for item in data["cover"]:
        click.echo(
            f"  C(g{item['representative']}) order {item['order']}: "
            f"{item['invariants']['pretty']}"
        )
    for item in data["wedge"]:
        click.echo(
            f"  wedge summand {item['invariants']['pretty']} "
            f"x {item['multiplicity']}"
        )


@cli.command("colim")
@group_option
@q_option
@format_option
@click.pass_obj
def colim_cmd(client, group_spec, q, fmt) -> None:
    """Generators/relators presentation of the colimit group."""
    data = client.post("/v1/colim", {"group": _group_payload(group_spec), "q": q})
    if fmt == "json":
        _emit_json(data)
        return
    click.echo(data["text"])
    click.echo(
        f"abelianization: {data['abelianization']['pretty']}  "
        f"surjects: {data['surjects']}"
    )


@cli.command("character")
@group_option
@format_option
@click.pass_obj
def character_cmd(client, group_spec, fmt) -> None:
    """Character of the degree-one homology representation (TC groups)."""
    data = client.post("/v1/character", {"group": _group_payload(group_spec)})
    if fmt == "json":
        _emit_json(data)
        return
    for cls, rep, val in zip(data["classes"], data["representatives"], data["values"]):
        click.echo(f"class of {rep} (size {len(cls)}): {val}")
    click.echo(f"kernel: {data['kernel']}  center: {data['center']}")


@cli.command("homology")
@group_option
@q_option
@click.option("--space", type=click.Choice(["B", "E"]), default="B", show_default=True)
@click.option("--i", "degree", type=int, required=True, help="homology degree")
@click.option("--dmax", type=int, default=None, help="chain complex depth (default i+1)")
@format_option
@click.pass_obj
def homology_cmd(client, group_spec, q, space, degree, dmax, fmt) -> None:
    """Integral homology of the B or E space by exact Smith normal form."""
    data = client.post(
        "/v1/homology",
        {
            "group": _group_payload(group_spec),
            "q": q, "space": space, "i": degree, "dmax": dmax,
        },
    )
    _emit_homology(data, fmt)


def _emit_homology(data: dict, fmt: str) -> None:
    if fmt == "json":
        _emit_json(data)
    elif fmt == "tsv":
        click.echo(
            "\t".join(
                str(data[k]) for k in ("group", "q", "space", "i", "rank", "method")
            )
            + "\t"
            + ",".join(str(d) for d in data["torsion"])
        )
    else:
        parts = ["Z"] * data["rank"] + [f"Z/{d}" for d in data["torsion"]]
        pretty = " + ".join(parts) if parts else "0"
        click.echo(
            f"H_{data['i']}({data['space']}(q={data['q']},{data['group']})) = "
            f"{pretty}   [{data['method']}]"
        )


@cli.command("h1-iq")
@group_option
@q_option
@format_option
@click.pass_obj
def h1_iq_cmd(client, group_spec, q, fmt) -> None:
    """Degree-one homology from the pair-relation presentation."""
    data = client.post("/v1/h1-iq", {"group": _group_payload(group_spec), "q": q})
    _emit_homology(data, fmt)


@cli.command("h1-map")
@group_option
@q_option
@format_option
@click.pass_obj
def h1_map_cmd(client, group_spec, q, fmt) -> None:
    """Cokernel of the induced degree-one map from the total space."""
    data = client.post("/v1/h1-map", {"group": _group_payload(group_spec), "q": q})
    if fmt == "json":
        _emit_json(data)
        return
    click.echo(
        f"cokernel H1(E)->H1(B) for {data['group']} (q={data['q']}): "
        f"{data['cokernel']['pretty']}"
    )
    click.echo(f"Feit-Thompson flag: {data['feit_thompson_flag']}")


@cli.command("verify-paper")
@click.option(
    "--suite", type=click.Choice(["counts", "homology", "tc", "all"]),
    default="all", show_default=True,
)
@click.option("--slow", is_flag=True, help="include the slow cross-checks")
@jobs_option
@click.option("--seed", type=int, default=0, show_default=True,
              help="seed for the randomized linear algebra oracle")
@format_option
@click.pass_obj
def verify_cmd(client, suite, slow, jobs, seed, fmt) -> None:
    """Recompute the documented example values and report PASS/FAIL."""
    data = client.post(
        "/v1/verify", {"suite": suite, "slow": slow, "jobs": jobs, "seed": seed}
    )
    if fmt == "json":
        _emit_json(data)
    else:
        for check in data["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            line = f"{status}  {check['name']}"
            if not check["passed"]:
                line += f"  expected={check['expected']}  computed={check['computed']}"
            click.echo(line)
        total = len(data["checks"])
        passed = sum(1 for c in data["checks"] if c["passed"])
        click.echo(f"{passed}/{total} checks passed")
    if not data["ok"]:
        raise SystemExit(1)


@cli.command("export")
@group_option
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="write to a file instead of stdout")
@click.pass_obj
def export_cmd(client, group_spec, output) -> None:
    """Export a validated group file (bit-exact reload guaranteed)."""
    data = client.post("/v1/export", {"group": _group_payload(group_spec)})
    text = json.dumps(data, sort_keys=True, separators=(",", ":"))
    if output is None:
        click.echo(text)
    else:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise ClientError(4, f"cannot write {output}: {exc}") from exc


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.exceptions.BadParameter as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 3
    except click.exceptions.NoSuchOption as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 3
    except click.exceptions.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.exceptions.Abort:
        return 1
    except ClientError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except OSError as exc:
        click.echo(f"io error: {exc}", err=True)
        return 4


if __name__ == "__main__":
    sys.exit(main())
