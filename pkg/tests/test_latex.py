from nl2mdp.ir import extract_latex_symbols


def test_shannon_reward_symbols():
    formula = (
        r"$R_t = \text{B} \cdot \log_2 \left( 1 + \frac{\text{TransmissionPower} \cdot "
        r"\text{ChannelGain}[t]}{\text{NoiseDensity} \cdot \text{Bandwidth}} \right)$"
    )
    # B is the display alias the closure check maps to Bandwidth
    assert extract_latex_symbols(formula) == {
        "B",
        "TransmissionPower",
        "ChannelGain",
        "NoiseDensity",
        "Bandwidth",
    }


def test_lowercase_token_not_extracted():
    assert extract_latex_symbols("$x$") == set()


def test_text_wrapped_symbol_with_indices():
    assert extract_latex_symbols(r"\text{StockLevel}_i(t)") == {"StockLevel"}


def test_notation_letters_excluded():
    formula = r"$J(\pi) = \mathbb{E} \left[ \sum_{t=0}^{\infty} \gamma^t R_t \mid \pi \right]$"
    assert extract_latex_symbols(formula) == set()


def test_mathfont_contents_excluded():
    assert extract_latex_symbols(r"$\mathbb{I}(\text{OrderQuantity}_i > 0)$") == {
        "OrderQuantity"
    }
    assert extract_latex_symbols(r"$t \in \mathbb{Z}_{\geq 0}$") == set()


def test_commands_and_greek_excluded():
    formula = r"$-\theta_{\text{max}} \leq \text{PoleAngle} \leq \theta_{\text{max}}$"
    assert extract_latex_symbols(formula) == {"PoleAngle"}


def test_subscripted_bare_tokens():
    formula = r"$P_{t+1} = P_t + V_t \cdot \text{TimeStepDuration}$"
    assert extract_latex_symbols(formula) == {"TimeStepDuration"}


def test_empty_formula():
    assert extract_latex_symbols("") == set()
