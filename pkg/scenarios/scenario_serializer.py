from typing import Dict, FrozenSet, Iterable, List

from scenarios.scenario import DISCLOSE_OPTION, Scenario
from world.literal import Literal, sorted_literals
from world.world_model import WorldModel, identity_relation


def _join(items: Iterable) -> str:
    return ", ".join(str(item) for item in items)


def _statement(head: str, payload: str = "") -> str:
    return f"{head}: {payload}" if payload else f"{head}:"


def _state_lines(model: WorldModel) -> List[str]:
    lines = []
    for state in model.states:
        # declared atoms first, in order, then anything the valuation adds
        atoms = sorted(model.atoms & set(state.valuation)) + sorted(
            set(state.valuation) - model.atoms
        )
        payload = _join(f"{atom}={int(state.valuation[atom])}" for atom in atoms)
        lines.append(_statement(f"state {state.state_id}", payload))
    return lines


def _epistemic_lines(model: WorldModel) -> List[str]:
    identity = identity_relation(model.state_ids)
    lines = []
    for agent in sorted(model.epistemic):
        relation = model.epistemic[agent]
        if agent in model.agents and relation == identity:
            continue
        payload = _join(f"{source}->{target}" for source, target in sorted(relation))
        lines.append(_statement(f"epistemic {agent}", payload))
    return lines


def _value_lines(model: WorldModel) -> List[str]:
    by_agent: Dict[str, Dict[str, FrozenSet[Literal]]] = {}
    for (agent, state_id), literals in model.values.items():
        by_agent.setdefault(agent, {})[state_id] = literals

    lines = []
    for agent in sorted(by_agent):
        per_state = by_agent[agent]
        distinct = set(per_state.values())
        if model.state_ids and set(per_state) == model.state_ids and len(distinct) == 1:
            (literals,) = distinct
            lines.append(_statement(f"val {agent} @ *", _join(sorted_literals(literals))))
            continue
        for state_id in sorted(per_state):
            lines.append(
                _statement(
                    f"val {agent} @ {state_id}", _join(sorted_literals(per_state[state_id]))
                )
            )
    return lines


def serialize_scenario(scenario: Scenario) -> str:
    """
    Canonical text of a scenario. Structurally equal scenarios serialize to
    identical text, and parsing the text gives the scenario back.
    """
    model = scenario.model
    lines = [
        _statement("agents", _join(sorted(model.agents))),
        _statement("atoms", _join(sorted(model.atoms))),
        _statement("actions", _join(sorted(model.actions))),
    ]
    lines += _state_lines(model)
    lines += [_statement("trans", str(t)) for t in sorted(model.transitions)]
    lines += _epistemic_lines(model)
    lines += _value_lines(model)
    lines += [
        _statement("observer", scenario.observer),
        _statement("expresser", scenario.expresser),
    ]
    lines += [
        _statement("rule", str(rule))
        for rule in sorted(scenario.rules, key=lambda r: r.sort_key)
    ]
    lines += [
        _statement(
            f"obs {event.index}",
            f"state={event.state} action={event.action} express={event.expression}",
        )
        for event in scenario.script
    ]
    if DISCLOSE_OPTION in scenario.options:
        lines.append(_statement("disclose", scenario.options[DISCLOSE_OPTION]))
    lines += [
        _statement(f"option {key}", scenario.options[key])
        for key in sorted(scenario.options)
        if key != DISCLOSE_OPTION
    ]
    return "\n".join(lines) + "\n"
