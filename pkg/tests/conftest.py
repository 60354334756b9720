import pytest

from draftbench.cards import Card, CardSet, Rarity, load_bundled_set


@pytest.fixture(scope="session")
def desk():
    return load_bundled_set("DESK")


def make_card(index, name, rarity=Rarity.COMMON, colors=(0, 0, 0, 0, 0), strength=2.0):
    return Card(index, name, rarity, tuple(colors), strength)


@pytest.fixture(scope="session")
def mono_set():
    """Ten cards, two per color, varied strengths; handy for agent hand-tests."""
    cards = []
    names = iter(
        "Alpha Bravo Charlie Delta Echo Foxtrot Golf Hotel India Juliet".split()
    )
    strengths = [1.0, 4.0, 1.5, 4.0, 2.0, 3.0, 2.5, 3.5, 0.5, 4.5]
    for i in range(10):
        colors = [0] * 5
        colors[i % 5] = 1 if i < 5 else 2
        cards.append(make_card(i, next(names), Rarity.COMMON, colors, strengths[i]))
    return CardSet("MONO", cards)
