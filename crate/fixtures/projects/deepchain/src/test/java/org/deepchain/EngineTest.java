package org.deepchain;

import static org.junit.Assert.assertTrue;

import org.junit.After;
import org.junit.Before;
import org.junit.Test;

public class EngineTest {
    private Engine engine;
    private int attempts;

    @Before
    public void setup() {
        engine = new Engine();
    }

    @After
    public void teardown() {
        attempts = 0;
    }

    @Test
    public void startsEngine() {
        engine.start();
        assertTrue(engine.isRunning());
    }
}
