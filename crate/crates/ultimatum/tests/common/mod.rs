//! Shared test helpers: a checker for the DOT graph grammar.
//!
//! Covers the grammar subset the tree renderer may emit: `digraph`/`graph`
//! headers, node and edge statements with attribute lists, `name = value`
//! assignments, and nested subgraphs.

#[derive(Debug, PartialEq)]
enum Token {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Semicolon,
    Comma,
    Edge,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' => {
                chars.next();
                tokens.push(Token::LBrace);
            }
            '}' => {
                chars.next();
                tokens.push(Token::RBrace);
            }
            '[' => {
                chars.next();
                tokens.push(Token::LBracket);
            }
            ']' => {
                chars.next();
                tokens.push(Token::RBracket);
            }
            '=' => {
                chars.next();
                tokens.push(Token::Equals);
            }
            ';' => {
                chars.next();
                tokens.push(Token::Semicolon);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('>') | Some('-') => tokens.push(Token::Edge),
                    other => return Err(format!("stray '-' before {other:?}")),
                }
            }
            '"' => {
                chars.next();
                let mut value = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => match chars.next() {
                            Some(escaped) => value.push(escaped),
                            None => return Err("unterminated escape".into()),
                        },
                        Some('"') => break,
                        Some(other) => value.push(other),
                        None => return Err("unterminated string".into()),
                    }
                }
                tokens.push(Token::Id(value));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut value = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        value.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Id(value));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    position: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.position)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let token = self.tokens.get(self.position);
        self.position += 1;
        token
    }

    fn expect(&mut self, token: Token) -> Result<(), String> {
        match self.next() {
            Some(found) if *found == token => Ok(()),
            found => Err(format!("expected {token:?}, found {found:?}")),
        }
    }

    fn expect_id(&mut self) -> Result<&'a str, String> {
        match self.next() {
            Some(Token::Id(value)) => Ok(value),
            found => Err(format!("expected identifier, found {found:?}")),
        }
    }

    /// `('[' a_list ']')+` where `a_list` is `ID '=' ID` separated by `;`/`,`.
    fn attr_list(&mut self) -> Result<(), String> {
        while self.peek() == Some(&Token::LBracket) {
            self.next();
            while self.peek() != Some(&Token::RBracket) {
                self.expect_id()?;
                self.expect(Token::Equals)?;
                self.expect_id()?;
                if matches!(self.peek(), Some(Token::Semicolon) | Some(Token::Comma)) {
                    self.next();
                }
            }
            self.expect(Token::RBracket)?;
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), String> {
        match self.next() {
            Some(Token::Id(keyword)) if keyword == "subgraph" => {
                if matches!(self.peek(), Some(Token::Id(_))) {
                    self.next();
                }
                self.expect(Token::LBrace)?;
                self.statement_list()?;
                self.expect(Token::RBrace)?;
            }
            Some(Token::Id(_)) => match self.peek() {
                Some(Token::Equals) => {
                    self.next();
                    self.expect_id()?;
                }
                Some(Token::Edge) => {
                    while self.peek() == Some(&Token::Edge) {
                        self.next();
                        self.expect_id()?;
                    }
                    self.attr_list()?;
                }
                _ => self.attr_list()?,
            },
            found => return Err(format!("expected statement, found {found:?}")),
        }
        if self.peek() == Some(&Token::Semicolon) {
            self.next();
        }
        Ok(())
    }

    fn statement_list(&mut self) -> Result<(), String> {
        while self.peek().is_some() && self.peek() != Some(&Token::RBrace) {
            self.statement()?;
        }
        Ok(())
    }
}

/// Checks a DOT document against the graph grammar.
pub fn check_dot_grammar(input: &str) -> Result<(), String> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        tokens: &tokens,
        position: 0,
    };
    match parser.expect_id()? {
        "digraph" | "graph" => {}
        other => return Err(format!("expected graph keyword, found {other:?}")),
    }
    if matches!(parser.peek(), Some(Token::Id(_))) {
        parser.next();
    }
    parser.expect(Token::LBrace)?;
    parser.statement_list()?;
    parser.expect(Token::RBrace)?;
    if parser.peek().is_some() {
        return Err("trailing tokens after closing brace".into());
    }
    Ok(())
}
